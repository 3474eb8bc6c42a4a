// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairloop/design.hpp"
#include "fairloop/ols.hpp"

namespace fairloop {

/// CDF of the F distribution with d1 and d2 degrees of freedom, evaluated
/// through the regularized incomplete beta function.
double f_cdf(double x, int d1, int d2);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

enum class EffectClass { Negligible, Small, Medium, Large };

std::string to_string(EffectClass effect);

/// Cohen's thresholds: eta^2 >= 0.01 / 0.06 / 0.14.
EffectClass classify_effect(double eta_squared);

struct AnovaRow {
    TermId term;
    std::string name;
    std::vector<std::string> dummy_labels;  // one per coefficient, may be empty strings
    std::vector<double> coefficients;
    double sum_sq = 0.0;
    int df = 0;
    std::optional<double> f_stat;   // absent when df_resid <= 0
    std::optional<double> p_value;  // absent when df_resid <= 0
    double eta_squared = 0.0;
    EffectClass effect = EffectClass::Negligible;
    bool significant = false;  // p < 0.05
};

struct AnovaTable {
    std::vector<AnovaRow> rows;
    double ss_total = 0.0;
    double ss_resid = 0.0;
    int df_resid = 0;
    double r_squared = 0.0;
    bool ss_total_zero = false;
    std::vector<std::string> dropped_columns;  // constant and aliased columns
};

/// Per-term sums of squares by refitting without the term's columns
/// (SS_term = SS_resid(reduced) - SS_resid(full)), with the dummy columns of
/// a term aggregated into a single row.
AnovaTable anova(const DesignMatrix& design, const FitResult& fit, const ConfigSpace& space);

struct SensitivityReport {
    std::vector<AnovaRow> rows;  // sorted by sum of squares descending
    double r_squared = 0.0;
    double ss_total = 0.0;
    double ss_resid = 0.0;
    int df_resid = 0;
    bool ss_total_zero = false;
    std::vector<std::string> dropped_columns;
    std::size_t row_count = 0;  // configurations that produced the fit
    std::string response_id;
};

/// Ranks the table by effect size (sum of squares, ties by term name) and
/// assigns effect classes. Insignificant rows are kept but flagged.
SensitivityReport rank_terms(const AnovaTable& table);

/// "***" for p < .001, "**" for p < .01, "*" for p < .05, "" otherwise.
std::string significance_stars(std::optional<double> p_value);

}  // namespace fairloop
