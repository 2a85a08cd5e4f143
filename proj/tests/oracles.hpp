// Independent reference computations used by the tests. Everything here is
// written from the defining formulas with long double accumulation and does
// not call into the library's numerics.

#pragma once

#include "sticky/core.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

struct Aggregates {
    long double mass = 0, theta = 0, velocity = 0, position = 0;
};

// Barycentric aggregates of particles first..last at time t.
inline Aggregates aggregates(const sticky::InitialData& d, std::size_t first, std::size_t last,
                             long double t) {
    Aggregates a;
    long double mx = 0, mv = 0, ma = 0;
    for (std::size_t j = first; j <= last; ++j) {
        const long double m = d.masses()[j];
        const long double x = d.positions()[j];
        const long double v = d.velocities()[j];
        const long double th = d.accelerations()[j];
        a.mass += m;
        ma += m * th;
        mv += m * (v + t * th);
        mx += m * (x + t * v + t * t * th / 2);
    }
    a.theta = ma / a.mass;
    a.velocity = mv / a.mass;
    a.position = mx / a.mass;
    return a;
}

// Mean of eta(t) = x + t v + t^2/2 theta over first..last.
inline long double eta_average(const sticky::InitialData& d, std::size_t first, std::size_t last,
                               long double t) {
    return aggregates(d, first, last, t).position;
}

// "q1(s) > q2(s) for all s > t1", judged on a dense grid of (t1, t1 + span].
inline bool dominates_on_grid(const sticky::QuadraticPath& q1, const sticky::QuadraticPath& q2,
                              double t1, double span = 100.0, int points = 4000) {
    for (int k = 1; k <= points; ++k) {
        // Geometric refinement near t1 plus a uniform sweep.
        const long double s_geo = t1 + span * std::pow(10.0L, -6.0L + 6.0L * k / points);
        const long double s_uni = t1 + span * static_cast<long double>(k) / points;
        for (long double s : {s_geo, s_uni}) {
            const long double d = (q1.c0 - q2.c0) + s * (q1.c1 - q2.c1) + s * s * (q1.c2 - q2.c2) / 2;
            if (!(d > 0)) return false;
        }
    }
    return true;
}

inline sticky::InitialData make(std::vector<double> x, std::vector<double> m, std::vector<double> v,
                                std::vector<double> theta) {
    return sticky::validate({std::move(x), std::move(m), std::move(v), std::move(theta)});
}

}  // namespace oracle
