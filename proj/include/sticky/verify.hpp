// Property suites run over simulated timelines by the fuzzer and the
// acceptance tests.

#pragma once

#include "sticky/dynamics.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sticky {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string detail;  // first failure
};

// Horizon used for sampling a timeline: past the last shock, at least 1.
double sampling_horizon(const ShockTimeline& timeline);

// `count` uniform times in (0, horizon] at least `clearance` away from every
// shock time.
std::vector<double> times_avoiding_shocks(const ShockTimeline& timeline, std::size_t count,
                                          double horizon, double clearance, std::mt19937_64& rng);

// Mass, force, momentum and ordering checks on a 10^3-point grid plus shock
// times and their immediate neighbourhoods.
SuiteResult conservation_suite(const ShockTimeline& timeline, std::size_t grid = 1000);
SuiteResult gvp_suite(const ShockTimeline& timeline, const std::vector<double>& times);
SuiteResult dermoune_suite(const ShockTimeline& timeline, const std::vector<double>& times);

struct RandomInstanceOptions {
    double position_span = 10.0;  // positions uniform in [0, span]
    double mass_min = 0.1;        // log-uniform masses
    double mass_max = 10.0;
    double velocity_sd = 1.0;
    double acceleration_sd = 1.0;
    bool admissible = true;       // accelerations sorted in descending order
    bool zero_acceleration = false;
};

InitialData random_instance(std::mt19937_64& rng, std::size_t n,
                            const RandomInstanceOptions& options = {});

}  // namespace sticky
