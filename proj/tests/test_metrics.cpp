// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fairloop/metrics.hpp"
#include "fairloop/rng.hpp"

using namespace fairloop;

namespace {

Snapshot two_group_snapshot(std::int64_t sel_a, std::int64_t tot_a, std::int64_t sel_b,
                            std::int64_t tot_b) {
    Snapshot s;
    s.step = 1;
    s.groups.resize(2);
    s.groups[0].label = "a";
    s.groups[0].selected = sel_a;
    s.groups[0].total = tot_a;
    s.groups[0].population = tot_a;
    s.groups[1].label = "b";
    s.groups[1].selected = sel_b;
    s.groups[1].total = tot_b;
    s.groups[1].population = tot_b;
    return s;
}

Snapshot swapped(Snapshot s) {
    std::swap(s.groups[0], s.groups[1]);
    return s;
}

Trace trace_from_values(const std::vector<double>& f_values) {
    // Encode each F value as a demographic-parity gap: group a selects
    // round(1e6 * f) of 1e6, group b selects 0 of 1e6.
    Trace t;
    for (std::size_t i = 0; i < f_values.size(); ++i) {
        Snapshot s = two_group_snapshot(static_cast<std::int64_t>(std::llround(f_values[i] * 1000000.0)),
                                        1000000, 0, 1000000);
        s.step = static_cast<int>(i) + 1;
        t.snapshots.push_back(std::move(s));
    }
    return t;
}

}  // namespace

TEST_CASE("demographic_parity") {
    CHECK(demographic_parity(two_group_snapshot(50, 100, 50, 100)) == doctest::Approx(0.0));
    CHECK(demographic_parity(two_group_snapshot(80, 100, 60, 100)) == doctest::Approx(0.2));

    SUBCASE("label symmetry") {
        const auto s = two_group_snapshot(80, 100, 55, 110);
        CHECK(demographic_parity(s) == doctest::Approx(demographic_parity(swapped(s))));
    }
    SUBCASE("empty group") {
        CHECK_THROWS_WITH_AS(demographic_parity(two_group_snapshot(1, 2, 0, 0)), "empty group",
                             std::invalid_argument);
    }
}

TEST_CASE("equal_opportunity") {
    auto s = two_group_snapshot(0, 100, 0, 100);
    s.groups[0].positives = 100;
    s.groups[0].true_positives = 90;
    s.groups[1].positives = 100;
    s.groups[1].true_positives = 90;
    CHECK(equal_opportunity(s) == doctest::Approx(0.0));

    s.groups[0].positives = 40;
    s.groups[0].true_positives = 30;  // 0.75
    s.groups[1].positives = 40;
    s.groups[1].true_positives = 20;  // 0.50
    CHECK(equal_opportunity(s) == doctest::Approx(0.25));

    SUBCASE("rate invariance under count scaling") {
        auto scaled = s;
        for (auto& g : scaled.groups) {
            g.positives *= 10;
            g.true_positives *= 10;
            g.total *= 10;
        }
        CHECK(equal_opportunity(scaled) == doctest::Approx(equal_opportunity(s)));
    }
    SUBCASE("label symmetry") {
        CHECK(equal_opportunity(s) == doctest::Approx(equal_opportunity(swapped(s))));
    }
    SUBCASE("no positives") {
        auto bad = s;
        bad.groups[1].positives = 0;
        bad.groups[1].true_positives = 0;
        CHECK_THROWS_WITH_AS(equal_opportunity(bad), "no positives in group",
                             std::invalid_argument);
    }
}

TEST_CASE("mean_gap") {
    auto s = two_group_snapshot(0, 10, 0, 10);
    s.groups[0].mean_feature = 620.0;
    s.groups[1].mean_feature = 560.0;
    CHECK(mean_gap(s) == doctest::Approx(60.0));

    SUBCASE("identical distributions give zero") {
        s.groups[1].mean_feature = 620.0;
        CHECK(mean_gap(s) == doctest::Approx(0.0));
    }
    SUBCASE("translation invariance") {
        auto shifted = s;
        shifted.groups[0].mean_feature += 17.5;
        shifted.groups[1].mean_feature += 17.5;
        CHECK(mean_gap(shifted) == doctest::Approx(mean_gap(s)));
    }
    SUBCASE("label symmetry") {
        CHECK(mean_gap(s) == doctest::Approx(mean_gap(swapped(s))));
    }
}

TEST_CASE("avg_pairwise_rpd") {
    CHECK(avg_pairwise_rpd({3.0, 3.0, 3.0}) == doctest::Approx(0.0));
    CHECK(avg_pairwise_rpd({1.0, 3.0}) == doctest::Approx(1.0));
    CHECK(avg_pairwise_rpd({2.0, 2.0, 6.0}) == doctest::Approx(2.0 / 3.0));

    SUBCASE("zero-zero pairs contribute zero") {
        CHECK(avg_pairwise_rpd({0.0, 0.0, 4.0}) == doctest::Approx((0.0 + 2.0 + 2.0) / 3.0));
    }
    SUBCASE("fewer than two districts") {
        CHECK_THROWS_AS(avg_pairwise_rpd({1.0}), std::invalid_argument);
    }
    SUBCASE("bounded by 2") {
        RngStream rng(5);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> scores;
            for (int d = 0; d < 4; ++d) {
                scores.push_back(rng.next_double() * 10.0);
            }
            const double v = avg_pairwise_rpd(scores);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 2.0);
        }
    }
}

TEST_CASE("avg_inc and max_inc on forced values") {
    const SnapshotCriterion dp = [](const Snapshot& s) { return demographic_parity(s); };

    SUBCASE("constant trace gives zero") {
        const Trace t = trace_from_values({0.25, 0.25, 0.25, 0.25});
        CHECK(avg_inc(t, dp) == doctest::Approx(0.0));
        CHECK(max_inc(t, dp) == doctest::Approx(0.0));
    }
    SUBCASE("forced arithmetic") {
        const Trace t = trace_from_values({0.1, 0.2, 0.3});
        CHECK(avg_inc(t, dp) == doctest::Approx(0.1));
        const Trace u = trace_from_values({0.1, 0.3, 0.2});
        CHECK(max_inc(u, dp) == doctest::Approx(0.2));
    }
    SUBCASE("single-step trace") {
        const Trace t = trace_from_values({0.4});
        CHECK(avg_inc(t, dp) == doctest::Approx(0.0));
        CHECK(max_inc(t, dp) == doctest::Approx(0.0));
    }
}

TEST_CASE("property: long-term metrics match an independent fold oracle") {
    const SnapshotCriterion dp = [](const Snapshot& s) { return demographic_parity(s); };
    RngStream rng(321);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(rng.next_below(20));
        std::vector<double> values;
        for (int i = 0; i < k; ++i) {
            values.push_back(rng.next_below(1000001) / 1000000.0);
        }
        const Trace t = trace_from_values(values);

        // Oracle: explicit fold over the snapshot list.
        double sum = 0.0;
        double peak = -1.0;
        for (const auto& s : t.snapshots) {
            const double f = dp(s);
            sum += f;
            peak = std::max(peak, f);
        }
        const double first = dp(t.snapshots.front());
        const double oracle_avg = sum / k - first;
        const double oracle_max = peak - first;

        REQUIRE(avg_inc(t, dp) == doctest::Approx(oracle_avg).epsilon(1e-12));
        REQUIRE(max_inc(t, dp) == doctest::Approx(oracle_max).epsilon(1e-12));
        REQUIRE(max_inc(t, dp) >= avg_inc(t, dp) - 1e-12);
        REQUIRE(max_inc(t, dp) >= -1e-12);
    }
}

TEST_CASE("trace_statistic_over_runs") {
    const LongTermMetric lf = make_long_term_metric("dp", "max_inc");

    SUBCASE("single trace: std is zero") {
        const std::vector<Trace> traces = {trace_from_values({0.1, 0.4})};
        const auto stats = trace_statistic_over_runs(traces, lf);
        CHECK(stats.runs == 1);
        CHECK(stats.mean == doctest::Approx(0.3));
        CHECK(stats.std_dev == doctest::Approx(0.0));
    }
    SUBCASE("two-point closed form") {
        // Sample statistics of {1, 3}: mean 2, sample std sqrt(2).
        const auto direct = statistics_of({1.0, 3.0});
        CHECK(direct.mean == doctest::Approx(2.0));
        CHECK(direct.std_dev == doctest::Approx(std::sqrt(2.0)));

        // Trace-level: max_inc values 0.2 and 0.6 give mean 0.4, std sqrt(0.08).
        const std::vector<Trace> traces = {trace_from_values({0.1, 0.3}),
                                           trace_from_values({0.1, 0.7})};
        const auto stats = trace_statistic_over_runs(traces, lf);
        CHECK(stats.mean == doctest::Approx(0.4));
        CHECK(stats.std_dev == doctest::Approx(std::sqrt(0.08)));
    }
    SUBCASE("permutation invariance") {
        const std::vector<Trace> traces = {trace_from_values({0.1, 0.2}),
                                           trace_from_values({0.0, 0.5}),
                                           trace_from_values({0.3, 0.3})};
        std::vector<Trace> reversed(traces.rbegin(), traces.rend());
        const auto a = trace_statistic_over_runs(traces, lf);
        const auto b = trace_statistic_over_runs(reversed, lf);
        CHECK(a.mean == doctest::Approx(b.mean));
        CHECK(a.std_dev == doctest::Approx(b.std_dev));
    }
}

TEST_CASE("criterion ids resolve and reject unknowns") {
    CHECK_NOTHROW(criterion_by_id("dp"));
    CHECK_NOTHROW(criterion_by_id("eo"));
    CHECK_NOTHROW(criterion_by_id("mean_gap"));
    CHECK_NOTHROW(criterion_by_id("rpd"));
    CHECK_THROWS_AS(criterion_by_id("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_long_term_metric("dp", "median_inc"), std::invalid_argument);
    CHECK(make_long_term_metric("dp", "avg_inc").id == "avg_inc_dp");
}
