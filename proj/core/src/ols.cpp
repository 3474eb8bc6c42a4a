// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/ols.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fairloop {

namespace {

// Modified Gram-Schmidt rank filter: a column whose residual against the
// already-retained basis falls below tol is aliased. Scanning left to right
// keeps the drop choice deterministic.
void select_independent_columns(const DesignMatrix& design, std::vector<int>& retained,
                                std::vector<int>& aliased) {
    const std::size_t n = design.rows;
    std::vector<Eigen::VectorXd> basis;  // orthonormal
    for (std::size_t c = 0; c < design.values.size(); ++c) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(design.values[c].data(),
                                                              static_cast<Eigen::Index>(n));
        const double original_norm = v.norm();
        for (const auto& q : basis) {
            v -= q.dot(v) * q;
        }
        // Second pass improves orthogonality for near-dependent columns.
        for (const auto& q : basis) {
            v -= q.dot(v) * q;
        }
        const double tol = 1e-8 * (original_norm > 0.0 ? original_norm : 1.0);
        if (v.norm() <= tol) {
            aliased.push_back(static_cast<int>(c));
            continue;
        }
        basis.push_back(v / v.norm());
        retained.push_back(static_cast<int>(c));
    }
}

}  // namespace

FitResult fit_ols(const DesignMatrix& design) {
    const std::size_t n = design.rows;
    const std::size_t p = design.values.size();
    if (n < p + 1) {
        throw std::invalid_argument("underdetermined system: " + std::to_string(n) + " rows for " +
                                    std::to_string(p) + " columns");
    }

    FitResult fit;
    select_independent_columns(design, fit.retained_columns, fit.aliased_columns);

    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    double mean = 0.0;
    for (double v : design.response) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        y[static_cast<Eigen::Index>(r)] = design.response[r] - mean;
    }
    fit.ss_total = y.squaredNorm();

    const std::size_t q = fit.retained_columns.size();
    Eigen::VectorXd residual = y;
    if (q > 0) {
        Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(q));
        for (std::size_t c = 0; c < q; ++c) {
            x.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(
                design.values[static_cast<std::size_t>(fit.retained_columns[c])].data(),
                static_cast<Eigen::Index>(n));
        }
        const Eigen::VectorXd beta = x.householderQr().solve(y);
        residual = y - x * beta;
        fit.coefficients.assign(beta.data(), beta.data() + beta.size());
    }

    fit.residuals.assign(residual.data(), residual.data() + residual.size());
    fit.ss_resid = residual.squaredNorm();
    fit.r_squared = fit.ss_total > 0.0 ? 1.0 - fit.ss_resid / fit.ss_total : 0.0;
    if (fit.r_squared < 0.0) {
        fit.r_squared = 0.0;
    }
    return fit;
}

}  // namespace fairloop
