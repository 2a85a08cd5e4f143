#include "oracles.hpp"
#include "sticky/gvp.hpp"
#include "sticky/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace sticky;
using oracle::make;

TEST_CASE("interior condition on the sqrt(2) instance") {
    const auto d = make({0, 2}, {1, 3}, {0, 0}, {1, -1});
    // eta_0(2) = 2, eta_1(2) = 0: the left block is ahead after the shock.
    CHECK(interior_condition(GvpFunctional(d, 2.0), 0, 1, 1));
    // eta_0(1) = 1/2 < eta_1(1) = 3/2 before it.
    CHECK_FALSE(interior_condition(GvpFunctional(d, 1.0), 0, 1, 1));
    CHECK_THROWS_AS(interior_condition(GvpFunctional(d, 1.0), 0, 1, 0), Error);
    CHECK_THROWS_AS(interior_condition(GvpFunctional(d, 1.0), 0, 2, 1), Error);
}

TEST_CASE("endpoint tests on the head-on pair") {
    const auto d = make({0, 1}, {1, 1}, {1, 0}, {0, 0});
    const GvpFunctional before(d, 0.5), after(d, 2.0);
    CHECK(is_left_endpoint(before, 0));
    CHECK(is_left_endpoint(after, 0));
    CHECK(is_left_endpoint(before, 1));
    CHECK_FALSE(is_left_endpoint(after, 1));
    CHECK(is_right_endpoint(before, 1));
    CHECK(is_right_endpoint(after, 1));
    CHECK(is_right_endpoint(before, 0));
    CHECK_FALSE(is_right_endpoint(after, 0));
    CHECK(left_endpoint_margin(before, 1) > 0.0);
    CHECK(left_endpoint_margin(after, 1) < 0.0);
    try {
        is_left_endpoint(before, 2);
        FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexOutOfRange);
    }
    CHECK_THROWS_AS(is_right_endpoint(before, 2), Error);
}

TEST_CASE("functional averages match the aggregate oracle") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_instance(rng, 1 + rng() % 12);
        const double t = std::uniform_real_distribution<double>(0, 5)(rng);
        const GvpFunctional F(d, t);
        for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t j = i; j < d.size(); ++j) {
                const double o = static_cast<double>(oracle::eta_average(d, i, j, t));
                CHECK(std::fabs(F.average(i, j) - o) <= 1e-12 * (1 + std::fabs(o)));
            }
        }
    }
}

TEST_CASE("clusters from the variational principle: examples") {
    const auto pair = make({0, 1}, {1, 1}, {1, 0}, {0, 0});
    CHECK(describe(clusters_from_gvp(pair, 0.0).ranges()) == "{0}{1}");
    CHECK(describe(clusters_from_gvp(pair, 2.0).ranges()) == "{0..1}");

    const auto d = make({0, 2}, {1, 3}, {0, 0}, {1, -1});
    CHECK(describe(clusters_from_gvp(d, 1.0).ranges()) == "{0}{1}");
    CHECK(describe(clusters_from_gvp(d, 2.0).ranges()) == "{0..1}");

    std::mt19937_64 rng(1);
    const auto r = random_instance(rng, 9);
    CHECK(clusters_from_gvp(r, 0.0).size() == 9);

    const auto bad = make({0, 10}, {1, 1}, {0, 1}, {0, 1});
    try {
        clusters_from_gvp(bad, 1.0);
        FAIL("expected InadmissibleData");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InadmissibleData);
    }
}

TEST_CASE("simulated clusters satisfy every condition of the principle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const auto d = random_instance(rng, 1 + rng() % 10);
        const auto tl = simulate(d);
        for (double t : times_avoiding_shocks(tl, 3, sampling_horizon(tl), 1e-6, rng)) {
            const GvpFunctional F(d, t);
            std::vector<bool> is_start(d.size(), false), is_end(d.size(), false);
            for (const auto& c : tl.partition_at(t).clusters) {
                is_start[c.range.first] = true;
                is_end[c.range.last] = true;
                for (std::size_t y = c.range.first + 1; y <= c.range.last; ++y) {
                    CHECK(interior_condition(F, c.range.first, c.range.last, y));
                }
            }
            for (std::size_t i = 0; i < d.size(); ++i) {
                CHECK(is_left_endpoint(F, i) == is_start[i]);
                CHECK(is_right_endpoint(F, i) == is_end[i]);
            }
        }
    }
}

TEST_CASE("equivalence check at t = 0 and on tied accelerations") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto tab = random_instance(rng, 2 + rng() % 10).table();
        // Force ties: round the sorted accelerations to coarse steps.
        for (auto& a : tab.accelerations) a = std::round(a * 2.0) / 2.0;
        const auto d = validate(tab);
        REQUIRE(d.gvp_admissible());
        const auto tl = simulate(d);
        auto times = times_avoiding_shocks(tl, 5, sampling_horizon(tl), 1e-6, rng);
        times.insert(times.begin(), 0.0);
        const auto rep = gvp_equivalence_check(tl, times);
        CHECK(rep.checked == times.size());
        const std::string first = rep.ok() ? std::string() : rep.mismatches[0].gvp;
        CHECK_MESSAGE(rep.ok(), first);
    }
}

TEST_CASE("two-parabola Case 1: the principle fails after the second crossing") {
    // theta_0 < theta_1; free paths 2t and 1 + t^2/2 cross at 2 - sqrt(2)
    // and 2 + sqrt(2).
    const auto d = make({0, 1}, {1, 1}, {2, 0}, {0, 1});
    const auto tl = simulate(d, 10.0);
    const double t2 = 2 + std::sqrt(2.0);
    CHECK(describe(tl.partition_at(t2 + 1).ranges()) == "{0..1}");
    // Between the crossings the block inequality holds ...
    CHECK(interior_condition(GvpFunctional(d, 2.0), 0, 1, 1));
    // ... beyond the second one it fails, and the endpoint tests certify
    // particle 0 as a cluster end although the simulation keeps {0..1}.
    const GvpFunctional late(d, t2 + 1);
    CHECK_FALSE(interior_condition(late, 0, 1, 1));
    CHECK(is_right_endpoint(late, 0));
    CHECK(is_left_endpoint(late, 1));
}

TEST_CASE("two-parabola Case 2: the principle holds long after the shock") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.1, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const double th1 = U(rng), th2 = th1 - U(rng);
        const auto d = make({0, U(rng)}, {U(rng), U(rng)}, {U(rng) - 1, U(rng) - 1}, {th1, th2});
        const auto tl = simulate(d);
        REQUIRE(tl.events().size() == 1);
        const double T = tl.events()[0].time;
        for (int k = 1; k <= 200; ++k) {
            const double t = T + 999.0 * T * k / 200.0;
            CHECK(interior_condition(GvpFunctional(d, t), 0, 1, 1));
        }
    }
}

TEST_CASE("zero accelerations reduce to the classical principle") {
    std::mt19937_64 rng(12);
    RandomInstanceOptions opts;
    opts.zero_acceleration = true;
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_instance(rng, 1 + rng() % 12, opts);
        const auto tl = simulate(d);
        for (double t : times_avoiding_shocks(tl, 3, sampling_horizon(tl), 1e-6, rng)) {
            CHECK(same_blocks(clusters_from_gvp(d, t), classical_clusters(d, t)));
            CHECK(same_blocks(classical_clusters(d, t), tl.partition_at(t)));
        }
    }
}
