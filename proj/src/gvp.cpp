#include "sticky/gvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sticky {

GvpFunctional::GvpFunctional(const InitialData& data, double t, Tolerances tol,
                             bool include_acceleration)
    : t_(t), tol_(tol), include_acceleration_(include_acceleration) {
    if (!(t >= 0.0)) throw Error(ErrorCode::TimeOutOfRange, "GVP requires t >= 0");
    const std::size_t n = data.size();
    mass_.assign(n + 1, 0.0);
    mx_.assign(n + 1, 0.0);
    mv_.assign(n + 1, 0.0);
    ma_.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double m = data.masses()[j];
        mass_[j + 1] = mass_[j] + m;
        mx_[j + 1] = mx_[j] + m * data.positions()[j];
        mv_[j + 1] = mv_[j] + m * data.velocities()[j];
        ma_[j + 1] = ma_[j] + m * data.accelerations()[j];
    }
}

double GvpFunctional::average(std::size_t first, std::size_t last) const {
    if (first > last || last >= size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "[" + std::to_string(first) + ", " + std::to_string(last) + "]");
    }
    const double m = mass_[last + 1] - mass_[first];
    const double x = mx_[last + 1] - mx_[first];
    const double v = mv_[last + 1] - mv_[first];
    double value = x + t_ * v;
    if (include_acceleration_) value += 0.5 * t_ * t_ * (ma_[last + 1] - ma_[first]);
    return value / m;
}

bool interior_condition(const GvpFunctional& F, std::size_t first, std::size_t last,
                        std::size_t split) {
    if (!(first < split && split <= last) || last >= F.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "split " + std::to_string(split) +
                                                    " not interior to [" + std::to_string(first) +
                                                    ", " + std::to_string(last) + "]");
    }
    const double lhs = F.average(first, split - 1);
    const double rhs = F.average(split, last);
    return lhs >= rhs - F.tolerances().band(lhs, rhs);
}

namespace {

void check_index(const GvpFunctional& F, std::size_t i) {
    if (i >= F.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    std::to_string(i) + " with N = " + std::to_string(F.size()));
    }
}

// Smallest (rhs - band) - lhs over the comparisons, together with the
// smallest |rhs - lhs| - band seen.
struct Margin {
    double strict = std::numeric_limits<double>::infinity();
    double closeness = std::numeric_limits<double>::infinity();

    void update(const Tolerances& tol, double lhs, double rhs) {
        const double band = tol.band(lhs, rhs);
        strict = std::min(strict, rhs - band - lhs);
        closeness = std::min(closeness, std::fabs(rhs - lhs) - band);
    }
};

Margin left_margin(const GvpFunctional& F, std::size_t alpha) {
    Margin m;
    const std::size_t n = F.size();
    for (std::size_t j = 0; j < alpha; ++j) {
        const double lhs = F.average(j, alpha - 1);
        for (std::size_t k = alpha + 1; k <= n; ++k) m.update(F.tolerances(), lhs, F.average(alpha, k - 1));
    }
    return m;
}

Margin right_margin(const GvpFunctional& F, std::size_t beta) {
    Margin m;
    const std::size_t n = F.size();
    for (std::size_t j = 0; j <= beta; ++j) {
        const double lhs = F.average(j, beta);
        for (std::size_t k = beta + 1; k < n; ++k) m.update(F.tolerances(), lhs, F.average(beta + 1, k));
    }
    return m;
}

std::vector<IndexRange> pair_endpoints(const std::vector<bool>& left, const std::vector<bool>& right,
                                       double t) {
    const std::size_t n = left.size();
    std::vector<IndexRange> ranges;
    std::size_t i = 0;
    while (i < n) {
        if (!left[i]) {
            throw Error(ErrorCode::InconsistentEndpoints,
                        "index " + std::to_string(i) + " should open a cluster at t = " +
                            std::to_string(t));
        }
        std::size_t j = i;
        while (j < n && !right[j]) {
            if (j > i && left[j]) {
                throw Error(ErrorCode::InconsistentEndpoints,
                            "left endpoint " + std::to_string(j) + " inside open cluster from " +
                                std::to_string(i) + " at t = " + std::to_string(t));
            }
            ++j;
        }
        if (j == n) {
            throw Error(ErrorCode::InconsistentEndpoints,
                        "cluster opened at " + std::to_string(i) + " never closes at t = " +
                            std::to_string(t));
        }
        if (j > i && left[j]) {
            throw Error(ErrorCode::InconsistentEndpoints,
                        "index " + std::to_string(j) + " both closes and opens a cluster at t = " +
                            std::to_string(t));
        }
        ranges.push_back({i, j});
        i = j + 1;
    }
    return ranges;
}

Partition assemble(const InitialData& data, const std::vector<IndexRange>& ranges) {
    Partition p;
    for (const auto& r : ranges) p.clusters.push_back(make_cluster(data, r, 0.0));
    return p;
}

}  // namespace

double left_endpoint_margin(const GvpFunctional& F, std::size_t alpha) {
    check_index(F, alpha);
    return left_margin(F, alpha).strict;
}

double right_endpoint_margin(const GvpFunctional& F, std::size_t beta) {
    check_index(F, beta);
    return right_margin(F, beta).strict;
}

bool is_left_endpoint(const GvpFunctional& F, std::size_t alpha) {
    check_index(F, alpha);
    if (alpha == 0) return true;
    return left_margin(F, alpha).strict > 0.0;
}

bool is_right_endpoint(const GvpFunctional& F, std::size_t beta) {
    check_index(F, beta);
    if (beta + 1 == F.size()) return true;
    return right_margin(F, beta).strict > 0.0;
}

Partition clusters_from_gvp(const InitialData& data, double t, const Tolerances& tol) {
    if (!data.gvp_admissible()) {
        throw Error(ErrorCode::InadmissibleData,
                    "accelerations must be non-increasing in position");
    }
    const GvpFunctional F(data, t, tol);
    const std::size_t n = data.size();
    std::vector<bool> left(n), right(n);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = is_left_endpoint(F, i);
        right[i] = is_right_endpoint(F, i);
    }
    return assemble(data, pair_endpoints(left, right, t));
}

Partition classical_clusters(const InitialData& data, double t, const Tolerances& tol) {
    if (!(t >= 0.0)) throw Error(ErrorCode::TimeOutOfRange, "t must be non-negative");
    const std::size_t n = data.size();
    const auto& x = data.positions();
    const auto& m = data.masses();
    const auto& v = data.velocities();
    auto eta = [&](std::size_t j) { return x[j] + t * v[j]; };

    // For each split point s (between s-1 and s), the largest mean of a block
    // ending at s-1 and the smallest mean of a block starting at s.
    std::vector<double> max_left(n + 1, -std::numeric_limits<double>::infinity());
    std::vector<double> min_right(n + 1, std::numeric_limits<double>::infinity());
    for (std::size_t s = 1; s <= n; ++s) {
        double mass = 0.0, moment = 0.0;
        for (std::size_t j = s; j-- > 0;) {
            mass += m[j];
            moment += m[j] * eta(j);
            max_left[s] = std::max(max_left[s], moment / mass);
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        double mass = 0.0, moment = 0.0;
        for (std::size_t k = s; k < n; ++k) {
            mass += m[k];
            moment += m[k] * eta(k);
            min_right[s] = std::min(min_right[s], moment / mass);
        }
    }

    // A split is certified when every block to its left sits strictly below
    // every block to its right; the (ii) and (iii) conditions for the two
    // sides of a split reduce to the same comparison.
    std::vector<bool> left(n, false), right(n, false);
    left[0] = true;
    right[n - 1] = true;
    for (std::size_t s = 1; s < n; ++s) {
        const double lo = max_left[s];
        const double hi = min_right[s];
        const bool split = lo < hi - tol.band(lo, hi);
        left[s] = split;
        right[s - 1] = split;
    }
    return assemble(data, pair_endpoints(left, right, t));
}

GvpEquivalenceReport gvp_equivalence_check(const ShockTimeline& timeline,
                                           const std::vector<double>& times) {
    const InitialData& data = timeline.initial();
    const Tolerances& tol = timeline.tolerances();
    GvpEquivalenceReport report;
    for (double t : times) {
        ++report.checked;
        const Partition& simulated = timeline.partition_at(t);
        std::string gvp_blocks;
        bool match = false;
        try {
            const Partition gvp = clusters_from_gvp(data, t, tol);
            gvp_blocks = describe(gvp.ranges());
            match = same_blocks(gvp, simulated);
        } catch (const Error& e) {
            gvp_blocks = e.what();
        }
        if (!match) report.mismatches.push_back({t, gvp_blocks, describe(simulated.ranges())});

        const GvpFunctional F(data, t, tol);
        for (std::size_t i = 0; i < data.size(); ++i) {
            const bool close = (i > 0 && left_margin(F, i).closeness <= 0.0) ||
                               (i + 1 < data.size() && right_margin(F, i).closeness <= 0.0);
            if (close) {
                report.near_equalities.push_back(t);
                break;
            }
        }
    }
    return report;
}

GvpEquivalenceReport gvp_equivalence_check(const InitialData& data,
                                           const std::vector<double>& times,
                                           const Tolerances& tol) {
    if (!data.gvp_admissible()) {
        throw Error(ErrorCode::InadmissibleData,
                    "accelerations must be non-increasing in position");
    }
    double horizon = 1.0;
    for (double t : times) horizon = std::max(horizon, t);
    SimulationOptions options;
    options.tol = tol;
    return gvp_equivalence_check(simulate(data, horizon, options), times);
}

}  // namespace sticky
