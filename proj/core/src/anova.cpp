// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include "fairloop/anova.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairloop {

namespace {

// Continued fraction for the incomplete beta (modified Lentz). Converges
// quickly for x < (a+1)/(a+b+2); the caller applies the symmetry otherwise.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 3e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            break;
        }
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) {
        throw std::invalid_argument("beta parameters must be positive");
    }
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double x, int d1, int d2) {
    if (d1 < 1 || d2 < 1) {
        throw std::invalid_argument("degrees of freedom must be at least 1");
    }
    if (x <= 0.0) {
        return 0.0;
    }
    const double dd1 = static_cast<double>(d1);
    const double dd2 = static_cast<double>(d2);
    const double t = dd1 * x / (dd1 * x + dd2);
    return regularized_incomplete_beta(dd1 / 2.0, dd2 / 2.0, t);
}

std::string to_string(EffectClass effect) {
    switch (effect) {
        case EffectClass::Negligible: return "negligible";
        case EffectClass::Small: return "small";
        case EffectClass::Medium: return "medium";
        case EffectClass::Large: return "large";
    }
    return "unknown";
}

EffectClass classify_effect(double eta_squared) {
    if (eta_squared >= 0.14) {
        return EffectClass::Large;
    }
    if (eta_squared >= 0.06) {
        return EffectClass::Medium;
    }
    if (eta_squared >= 0.01) {
        return EffectClass::Small;
    }
    return EffectClass::Negligible;
}

namespace {

// Residual sum of squares of the centered response against a column subset.
double reduced_ss_resid(const DesignMatrix& design, const std::vector<int>& columns) {
    const std::size_t n = design.rows;
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    double mean = 0.0;
    for (double v : design.response) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        y[static_cast<Eigen::Index>(r)] = design.response[r] - mean;
    }
    if (columns.empty()) {
        return y.squaredNorm();
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        x.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(
            design.values[static_cast<std::size_t>(columns[c])].data(), static_cast<Eigen::Index>(n));
    }
    const Eigen::VectorXd beta = x.householderQr().solve(y);
    return (y - x * beta).squaredNorm();
}

}  // namespace

AnovaTable anova(const DesignMatrix& design, const FitResult& fit, const ConfigSpace& space) {
    AnovaTable table;
    table.ss_total = fit.ss_total;
    table.ss_resid = fit.ss_resid;
    table.r_squared = fit.r_squared;
    table.ss_total_zero = fit.ss_total <= 0.0;
    table.df_resid = static_cast<int>(design.rows) - 1 - static_cast<int>(fit.retained_columns.size());
    table.dropped_columns = design.dropped_columns;
    for (int c : fit.aliased_columns) {
        const auto& info = design.columns[static_cast<std::size_t>(c)];
        table.dropped_columns.push_back(term_name(info.term, space) +
                                        (info.dummy_label.empty() ? "" : " " + info.dummy_label) +
                                        ": aliased");
    }

    // Group retained columns by term, preserving first-appearance order.
    std::vector<TermId> term_order;
    std::vector<std::vector<std::size_t>> term_columns;  // indices into retained set
    for (std::size_t i = 0; i < fit.retained_columns.size(); ++i) {
        const TermId& term = design.columns[static_cast<std::size_t>(fit.retained_columns[i])].term;
        bool found = false;
        for (std::size_t t = 0; t < term_order.size(); ++t) {
            if (term_order[t] == term) {
                term_columns[t].push_back(i);
                found = true;
                break;
            }
        }
        if (!found) {
            term_order.push_back(term);
            term_columns.push_back({i});
        }
    }

    for (std::size_t t = 0; t < term_order.size(); ++t) {
        AnovaRow row;
        row.term = term_order[t];
        row.name = term_name(row.term, space);
        row.df = static_cast<int>(term_columns[t].size());

        std::vector<int> reduced;
        reduced.reserve(fit.retained_columns.size() - term_columns[t].size());
        for (std::size_t i = 0; i < fit.retained_columns.size(); ++i) {
            if (std::find(term_columns[t].begin(), term_columns[t].end(), i) ==
                term_columns[t].end()) {
                reduced.push_back(fit.retained_columns[i]);
            }
        }
        row.sum_sq = std::max(0.0, reduced_ss_resid(design, reduced) - fit.ss_resid);

        for (std::size_t i : term_columns[t]) {
            row.coefficients.push_back(fit.coefficients[i]);
            row.dummy_labels.push_back(
                design.columns[static_cast<std::size_t>(fit.retained_columns[i])].dummy_label);
        }

        row.eta_squared = table.ss_total > 0.0 ? row.sum_sq / table.ss_total : 0.0;
        row.effect = classify_effect(row.eta_squared);
        if (table.df_resid > 0 && table.ss_resid > 0.0) {
            const double ms_term = row.sum_sq / row.df;
            const double ms_resid = table.ss_resid / table.df_resid;
            const double f = ms_term / ms_resid;
            row.f_stat = f;
            row.p_value = 1.0 - f_cdf(f, row.df, table.df_resid);
            row.significant = *row.p_value < 0.05;
        } else if (table.df_resid > 0 && table.ss_resid == 0.0) {
            // Saturated response explained exactly: any nonzero term is
            // infinitely significant relative to zero residual.
            row.f_stat = std::numeric_limits<double>::infinity();
            row.p_value = row.sum_sq > 0.0 ? 0.0 : 1.0;
            row.significant = row.sum_sq > 0.0;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SensitivityReport rank_terms(const AnovaTable& table) {
    if (table.rows.empty()) {
        throw std::invalid_argument("empty anova table");
    }
    SensitivityReport report;
    report.rows = table.rows;
    report.r_squared = table.r_squared;
    report.ss_total = table.ss_total;
    report.ss_resid = table.ss_resid;
    report.df_resid = table.df_resid;
    report.ss_total_zero = table.ss_total_zero;
    report.dropped_columns = table.dropped_columns;
    std::sort(report.rows.begin(), report.rows.end(), [](const AnovaRow& a, const AnovaRow& b) {
        if (a.sum_sq != b.sum_sq) {
            return a.sum_sq > b.sum_sq;
        }
        return a.name < b.name;
    });
    return report;
}

std::string significance_stars(std::optional<double> p_value) {
    if (!p_value) {
        return "";
    }
    if (*p_value < 0.001) {
        return "***";
    }
    if (*p_value < 0.01) {
        return "**";
    }
    if (*p_value < 0.05) {
        return "*";
    }
    return "";
}

}  // namespace fairloop
