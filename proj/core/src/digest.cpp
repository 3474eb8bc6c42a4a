// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace fairloop {

namespace {

struct DigestContext {
    EVP_MD_CTX* ctx = nullptr;

    DigestContext() : ctx(EVP_MD_CTX_new()) {
        if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
            throw std::runtime_error("failed to initialize SHA-256 context");
        }
    }
    ~DigestContext() { EVP_MD_CTX_free(ctx); }
    DigestContext(const DigestContext&) = delete;
    DigestContext& operator=(const DigestContext&) = delete;

    void update(const void* data, std::size_t size) {
        if (EVP_DigestUpdate(ctx, data, size) != 1) {
            throw std::runtime_error("SHA-256 update failed");
        }
    }

    std::string finish() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int size = 0;
        if (EVP_DigestFinal_ex(ctx, digest.data(), &size) != 1) {
            throw std::runtime_error("SHA-256 finalization failed");
        }
        std::string hex;
        hex.reserve(2 * size);
        for (unsigned int i = 0; i < size; ++i) {
            char buf[3];
            std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
            hex += buf;
        }
        return hex;
    }
};

}  // namespace

std::string sha256_hex(std::string_view data) {
    DigestContext ctx;
    ctx.update(data.data(), data.size());
    return ctx.finish();
}

std::string sha256_file_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file for hashing: " + path.string());
    }
    DigestContext ctx;
    std::array<char, 1 << 16> buffer;
    while (in) {
        in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        const std::streamsize got = in.gcount();
        if (got > 0) {
            ctx.update(buffer.data(), static_cast<std::size_t>(got));
        }
    }
    return ctx.finish();
}

}  // namespace fairloop
