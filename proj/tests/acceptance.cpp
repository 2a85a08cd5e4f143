// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Criteria are numbered 1..10.

#include "sticky/dynamics.hpp"
#include "sticky/flow.hpp"
#include "sticky/gas.hpp"
#include "sticky/gvp.hpp"
#include "sticky/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sticky;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// The shared fuzz corpus: 1000 random admissible instances with N <= 12.
struct Corpus {
    std::vector<InitialData> data;
    std::vector<ShockTimeline> timelines;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus out;
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<std::size_t> size(1, 12);
        for (int k = 0; k < 1000; ++k) {
            out.data.push_back(random_instance(rng, size(rng)));
            out.timelines.push_back(simulate(out.data.back()));
        }
        return out;
    }();
    return c;
}

InitialData two_particles(double x2, double m1, double m2, double v1, double v2, double th1, double th2) {
    return validate({{0.0, x2}, {m1, m2}, {v1, v2}, {th1, th2}});
}

QuadraticPath free_path(const InitialData& d, std::size_t i) {
    return {d.positions()[i], d.velocities()[i], d.accelerations()[i]};
}

// 1. Two-parabola cases.
Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0, 1);
    std::normal_distribution<double> N(0, 1);

    for (int k = 0; k < 500; ++k) {  // theta_1 < theta_2
        const double gap = 0.1 + 5 * U(rng), dth = 0.1 + 2 * U(rng);
        const double th1 = N(rng), v1 = N(rng);
        const double dv = -std::sqrt(2 * dth * gap) * (1.05 + U(rng));
        const auto d = two_particles(gap, 0.1 + U(rng), 0.1 + U(rng), v1, v1 + dv, th1, th1 + dth);
        const auto p1 = free_path(d, 0), p2 = free_path(d, 1);
        const auto roots = quadratic_meet_times(p1, p2, 0.0);
        if (roots.size() != 2) {
            o.fail("case 1 instance " + std::to_string(k) + ": " + std::to_string(roots.size()) + " crossings");
            continue;
        }
        const double t1 = roots[0].time, t2 = roots[1].time;
        const double mid = 0.5 * (t1 + t2);
        if (!(p1(mid) > p2(mid))) o.fail("case 1: left path not ahead between the crossings");
        // "q1 > q2 for all s > t1" is false: the order flips back after t2.
        bool flipped = true;
        for (int j = 1; j <= 200; ++j) {
            const double s = t2 + (t2 - t1) * 0.01 * j;
            if (!(p1(s) < p2(s))) flipped = false;
        }
        if (!flipped) o.fail("case 1: dominance did not fail beyond the second crossing");
        try {
            lemma_quadratic_dominance(p1, p2, 0.0, mid);
            o.fail("case 1: the lemma's hypotheses were accepted");
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PreconditionViolated) o.fail(e.what());
        }
        if (interior_condition(GvpFunctional(d, t2 + (t2 - t1)), 0, 1, 1)) {
            o.fail("case 1: block inequality still holds after the second crossing");
        }
    }

    for (int k = 0; k < 500; ++k) {  // theta_1 > theta_2
        const double gap = 0.1 + 5 * U(rng), th1 = N(rng);
        const auto d = two_particles(gap, 0.1 + U(rng), 0.1 + U(rng), N(rng), N(rng), th1,
                                     th1 - 0.1 - 2 * U(rng));
        const auto p1 = free_path(d, 0), p2 = free_path(d, 1);
        const auto roots = quadratic_meet_times(p1, p2, 0.0);
        if (roots.size() != 1) {
            o.fail("case 2 instance " + std::to_string(k) + ": " + std::to_string(roots.size()) + " crossings");
            continue;
        }
        const double T = roots[0].time;
        if (!lemma_quadratic_dominance(p1, p2, 0.0, T)) o.fail("case 2: lemma returned false");
        const GvpFunctional early(d, T * 1.5);
        for (int j = 1; j <= 2000; ++j) {
            // Uniform up to 10^3 T plus a geometric approach to T.
            const double su = T + 999.0 * T * j / 2000.0;
            const double sg = T * (1 + std::pow(10.0, -4.0 + 7.0 * j / 2000.0));
            for (double s : {su, sg}) {
                if (s > 1000 * T) continue;
                if (!(p1(s) > p2(s))) {
                    o.fail("case 2: dominance fails at s = " + num(s) + " with T = " + num(T));
                    break;
                }
            }
        }
        for (int j = 1; j <= 50; ++j) {
            if (!interior_condition(GvpFunctional(d, T + 999.0 * T * j / 50.0), 0, 1, 1)) {
                o.fail("case 2: block inequality fails after the shock");
            }
        }
    }
    const double secs = seconds_since(start);
    if (secs >= 5.0) o.fail("runtime " + num(secs) + " s");
    if (o.pass) o.detail = "1000 two-particle instances, " + num(secs) + " s";
    return o;
}

// 2. GVP <-> simulation equivalence.
Outcome criterion2() {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    const auto& c = corpus();
    std::mt19937_64 rng(2);
    std::size_t checked = 0, mismatches = 0, near = 0, multi = 0;
    for (std::size_t k = 0; k < c.timelines.size(); ++k) {
        const auto& tl = c.timelines[k];
        const auto times = times_avoiding_shocks(tl, 5, sampling_horizon(tl), 1e-6, rng);
        if (times.size() != 5) o.fail("instance " + std::to_string(k) + ": could not place 5 times");
        const auto rep = gvp_equivalence_check(tl, times);
        checked += rep.checked;
        mismatches += rep.mismatches.size();
        near += rep.near_equalities.size();
        for (double t : times) multi += tl.partition_at(t).size() < tl.initial().size();
        if (!rep.ok() && o.pass) {
            o.fail("instance " + std::to_string(k) + " t = " + num(rep.mismatches[0].time) + ": " +
                   rep.mismatches[0].gvp + " vs " + rep.mismatches[0].simulated);
        }
    }
    const double secs = seconds_since(start);
    if (secs >= 60.0) o.fail("runtime " + num(secs) + " s");
    if (o.pass) {
        o.detail = std::to_string(checked) + " times, " + std::to_string(mismatches) + " mismatches, " +
                   std::to_string(multi) + " with merged clusters, " + std::to_string(near) +
                   " near-equalities, " + num(secs) + " s";
    }
    return o;
}

// 3. Classical reduction.
Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3);
    RandomInstanceOptions opts;
    opts.zero_acceleration = true;
    std::size_t compared = 0;
    for (int k = 0; k < 200; ++k) {
        const auto d = random_instance(rng, 1 + rng() % 12, opts);
        const auto tl = simulate(d);
        for (double t : times_avoiding_shocks(tl, 5, sampling_horizon(tl), 1e-6, rng)) {
            ++compared;
            if (!same_blocks(clusters_from_gvp(d, t), classical_clusters(d, t))) {
                o.fail("instance " + std::to_string(k) + " t = " + num(t));
            }
        }
    }
    if (o.pass) o.detail = "200 instances, " + std::to_string(compared) + " times, 0 mismatches";
    return o;
}

// 4. Conservation.
Outcome criterion4() {
    Outcome o;
    const auto& c = corpus();
    for (std::size_t k = 0; k < c.timelines.size(); ++k) {
        const auto r = conservation_suite(c.timelines[k], 1000);
        if (!r.passed) o.fail("instance " + std::to_string(k) + ": " + r.detail);
    }
    if (o.pass) o.detail = "1000 instances";
    return o;
}

// 5. Dermoune identities and right derivatives.
Outcome criterion5() {
    Outcome o;
    const auto& c = corpus();
    std::mt19937_64 rng(5);
    double worst_constant = 0, worst_velocity = 0;
    for (std::size_t k = 0; k < c.timelines.size(); ++k) {
        const auto& tl = c.timelines[k];
        const double h = sampling_horizon(tl);
        const auto r = dermoune_suite(tl, times_avoiding_shocks(tl, 20, h, 1e-6, rng));
        if (!r.passed) o.fail("instance " + std::to_string(k) + ": " + r.detail);
        for (double t : times_avoiding_shocks(tl, 2, h, 1e-2, rng)) {
            const auto rd = right_derivative_check(tl, t, {1e-2, 1e-3});
            worst_constant = std::max(worst_constant, rd.constant_mismatch / (1 + rd.predicted_constant));
            worst_velocity = std::max(worst_velocity, rd.velocity_mismatch);
            // First order: the scaled position error is the constant |theta|/2.
            if (rd.constant_mismatch > 1e-6 * (1 + rd.predicted_constant)) {
                o.fail("instance " + std::to_string(k) + ": position derivative constant off by " +
                       num(rd.constant_mismatch));
            }
            if (rd.velocity_mismatch > 1e-9) {
                o.fail("instance " + std::to_string(k) + ": velocity derivative off by " +
                       num(rd.velocity_mismatch));
            }
        }
    }
    if (o.pass) {
        o.detail = "1000 instances x 20 times; worst constant mismatch " + num(worst_constant) +
                   ", worst velocity mismatch " + num(worst_velocity);
    }
    return o;
}

struct Windows {
    double pre1, pre2, mid1, mid2, post1, post2;
};

// Instances with at least one shock, and the three windows used for them.
struct ShockCorpus {
    std::vector<ShockTimeline> timelines;
    std::vector<Windows> windows;
};

const ShockCorpus& shock_corpus() {
    static const ShockCorpus s = [] {
        ShockCorpus out;
        std::mt19937_64 rng(6);
        while (out.timelines.size() < 50) {
            auto tl = simulate(random_instance(rng, 2 + rng() % 7));
            if (tl.events().empty()) continue;
            const double first = tl.events().front().time;
            const double last = tl.events().back().time;
            double next = tl.events().size() > 1 ? tl.events()[1].time : 2 * first;
            const double after = std::min(next, 2 * first);
            out.windows.push_back({0.1 * first, 0.9 * first, 0.5 * first, 0.5 * (first + after),
                                   1.1 * last + 0.1, 1.1 * last + 1.1});
            out.timelines.push_back(std::move(tl));
        }
        return out;
    }();
    return s;
}

std::pair<double, double> visited(const ShockTimeline& tl, double t1, double t2, bool velocities) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 64; ++k) {
        const double t = t1 + (t2 - t1) * k / 64.0;
        for (double y : velocities ? tl.velocities_at(t) : tl.positions_at(t)) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        if (velocities) {
            for (double y : tl.velocities_at_left(t)) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    }
    return {lo - 0.5, hi + 0.5};
}

// 6. Position-space weak solution.
Outcome criterion6() {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    const auto& s = shock_corpus();
    double worst = 0;
    std::size_t reports = 0;
    for (std::size_t k = 0; k < s.timelines.size(); ++k) {
        const auto& tl = s.timelines[k];
        const auto& w = s.windows[k];
        for (auto [t1, t2] : {std::pair{w.pre1, w.pre2}, {w.mid1, w.mid2}, {w.post1, w.post2}}) {
            const auto [lo, hi] = visited(tl, t1, t2, false);
            for (const auto& fn : standard_test_functions(lo, hi)) {
                const auto rep = position_space_residuals(tl, fn, t1, t2);
                ++reports;
                for (const auto& e : rep.equations) worst = std::max(worst, std::fabs(e.residual));
                if (!rep.passes()) {
                    o.fail("instance " + std::to_string(k) + " window [" + num(t1) + ", " + num(t2) +
                           "] " + fn.name);
                }
            }
        }
    }
    const double secs = seconds_since(start);
    if (secs >= 120.0) o.fail("runtime " + num(secs) + " s");
    if (o.pass) {
        o.detail = std::to_string(reports) + " reports, worst residual " + num(worst) + ", " + num(secs) + " s";
    }
    return o;
}

// 7. Velocity-space weak solution with jumps.
Outcome criterion7() {
    Outcome o;
    const auto& s = shock_corpus();
    double worst = 0, worst_match = 0, largest_jump = 0;
    for (std::size_t k = 0; k < s.timelines.size(); ++k) {
        const auto& tl = s.timelines[k];
        const auto& d = tl.initial();
        const auto& w = s.windows[k];
        const auto [lo, hi] = visited(tl, w.mid1, w.mid2, true);
        for (const auto& fn : standard_test_functions(lo, hi)) {
            const auto rep = velocity_space_residuals(tl, fn, w.mid1, w.mid2);
            // Jump integrals computed particle by particle from the left and
            // right velocity limits at each shock in the window.
            double jump_mass = 0, jump_force = 0;
            for (double T : tl.shock_times()) {
                if (T <= w.mid1 || T > w.mid2) continue;
                const auto after = tl.velocities_at(T);
                const auto before = tl.velocities_at_left(T);
                for (std::size_t j = 0; j < d.size(); ++j) {
                    const double df = fn.f(after[j]) - fn.f(before[j]);
                    jump_mass += d.masses()[j] * df / d.total_mass();
                    jump_force += d.masses()[j] * d.accelerations()[j] * df / d.total_mass();
                }
            }
            const double expected[2] = {jump_mass, jump_force};
            for (std::size_t q = 0; q < 2; ++q) {
                const auto& e = rep.equations[q];
                worst = std::max(worst, std::fabs(e.residual));
                const double match = std::fabs(e.residual_without_jump - expected[q]);
                worst_match = std::max(worst_match, match);
                largest_jump = std::max(largest_jump, std::fabs(expected[q]));
                if (std::fabs(e.residual) > 1e-8) {
                    o.fail("instance " + std::to_string(k) + " " + fn.name + " " + e.equation +
                           ": residual " + num(e.residual));
                }
                if (match > 1e-8) {
                    o.fail("instance " + std::to_string(k) + " " + fn.name + " " + e.equation +
                           ": no-jump residual differs from the jump integral by " + num(match));
                }
            }
        }
    }
    if (largest_jump < 1e-3) o.fail("jump integrals too small to demonstrate anything");
    if (o.pass) {
        o.detail = "worst residual " + num(worst) + ", worst jump mismatch " + num(worst_match) +
                   ", largest jump integral " + num(largest_jump);
    }
    return o;
}

// 8. Congestion term.
Outcome criterion8() {
    Outcome o;
    const auto d = validate({{0, 10}, {1, 1}, {0, 1}, {1, 0}});
    const auto tl = simulate(d);
    const double T = tl.events().at(0).time;
    const auto at1 = velocity_space_fields(tl, 1.0);
    const double a = at1.a_at(1.0), w = at1.w_at(1.0);
    if (std::fabs(a - 0.25) > 1e-12) o.fail("a(1, 1) = " + num(a));
    if (std::fabs(w - 0.5) > 1e-12) o.fail("w(1, 1) = " + num(w));
    for (int k = 1; k < 400; ++k) {
        const double t = T * k / 400.0;
        if (std::fabs(t - 1.0) < 1e-9) continue;
        for (const auto& g : velocity_space_fields(tl, t).current) {
            if (g.a != 0.0) o.fail("a != 0 at t = " + num(t));
        }
    }
    const auto& c = corpus();
    std::size_t sampled = 0;
    for (std::size_t k = 0; k < c.timelines.size(); ++k) {
        const auto& tl_k = c.timelines[k];
        const double delta = std::min(congestion_delay(tl_k), sampling_horizon(tl_k));
        for (int j = 1; j <= 5; ++j) {
            const double t = delta * j / 6.0;
            ++sampled;
            for (const auto& g : velocity_space_fields(tl_k, t).current) {
                if (g.a != 0.0) o.fail("instance " + std::to_string(k) + ": a != 0 at t = " + num(t));
            }
        }
    }
    if (o.pass) {
        o.detail = "a(1,1) = " + num(a) + ", w(1,1) = " + num(w) + "; " + std::to_string(sampled) +
                   " samples inside (0, delta)";
    }
    return o;
}

// 9. Initial limits and the non-commutation example.
Outcome criterion9() {
    Outcome o;
    std::size_t generic = 0;
    const auto& c = corpus();
    for (std::size_t k = 0; k < c.timelines.size() && generic < 50; ++k) {
        const auto& tl = c.timelines[k];
        // Generic: the sampling grid t <= 1e-2 lies before the first shock and
        // before any velocity coincidence.
        if (tl.initial().size() < 2 || congestion_delay(tl) <= 1e-2) continue;
        ++generic;
        const auto rep = initial_limits_check(tl, standard_test_functions(-4, 4));
        if (!rep.monotone || !rep.converged) o.fail("instance " + std::to_string(k) + " did not converge");
        if (rep.a0_nonzero) o.fail("instance " + std::to_string(k) + " has tied initial velocities");
    }
    // v-tied instance: a0 != 0 while a mu vanishes for every t > 0.
    const auto tied = simulate(validate({{0, 5}, {1, 2}, {1, 1}, {1, -1}}));
    const auto rep = initial_limits_check(tied, standard_test_functions(-1, 3));
    if (!rep.a0_nonzero || !(rep.initial_congestion > 0.0)) o.fail("tied instance: a0 vanished");
    if (!rep.converged || !rep.monotone) o.fail("tied instance: limits did not converge");
    for (const auto& s : rep.samples) {
        if (s.congestion != 0.0) o.fail("tied instance: a mu != 0 at t = " + num(s.t));
    }
    if (o.pass) {
        o.detail = std::to_string(generic) + " generic instances converge; tied instance has |a0 mu0| = " +
                   num(rep.initial_congestion) + " but a mu = 0 at t = 1e-2, 1e-3, 1e-4";
    }
    return o;
}

// 10. Event-driven vs time-stepped oracle.
Outcome criterion10() {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    const double dt = 1e-5;
    const auto& c = corpus();
    std::mt19937_64 rng(10);
    std::size_t compared = 0, merged = 0;
    for (std::size_t k = 0; k < c.timelines.size(); ++k) {
        const auto& tl = c.timelines[k];
        const double horizon = std::min(sampling_horizon(tl), 1.5);
        const auto times = times_avoiding_shocks(tl, 5, horizon, 10 * dt * 1.01, rng);
        const auto oracle = brute_force_partitions(tl.initial(), times, dt);
        for (std::size_t j = 0; j < times.size(); ++j) {
            ++compared;
            merged += tl.partition_at(times[j]).size() < tl.initial().size();
            if (!same_blocks(oracle[j], tl.partition_at(times[j]))) {
                o.fail("instance " + std::to_string(k) + " t = " + num(times[j]) + ": oracle " +
                       describe(oracle[j].ranges()) + " vs " + describe(tl.partition_at(times[j]).ranges()));
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(compared) + " comparisons (" + std::to_string(merged) +
                   " with merged clusters), " + num(seconds_since(start)) + " s";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("AC%zu %s %s\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
