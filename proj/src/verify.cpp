#include "sticky/verify.hpp"

#include "sticky/flow.hpp"
#include "sticky/gvp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sticky {

double sampling_horizon(const ShockTimeline& timeline) {
    double horizon = 1.0;
    if (!timeline.events().empty()) horizon = std::max(horizon, 1.25 * timeline.events().back().time);
    return std::min(horizon, timeline.t_end());
}

std::vector<double> times_avoiding_shocks(const ShockTimeline& timeline, std::size_t count,
                                          double horizon, double clearance, std::mt19937_64& rng) {
    const auto shocks = timeline.shock_times();
    std::uniform_real_distribution<double> pick(0.0, horizon);
    std::vector<double> out;
    std::size_t attempts = 0;
    while (out.size() < count && attempts < 1000 * count) {
        ++attempts;
        const double t = pick(rng);
        if (t <= clearance) continue;
        const bool clear = std::none_of(shocks.begin(), shocks.end(),
                                        [&](double s) { return std::fabs(s - t) < clearance; });
        if (clear) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

SuiteResult conservation_suite(const ShockTimeline& timeline, std::size_t grid) {
    SuiteResult result{"conservation", true, {}};
    auto fail = [&](const std::string& what) {
        if (result.passed) result.detail = what;
        result.passed = false;
    };
    const InitialData& data = timeline.initial();
    const auto& m = data.masses();
    const double horizon = sampling_horizon(timeline);

    double force0 = 0.0, momentum0 = 0.0, force_scale = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        force0 += m[j] * data.accelerations()[j];
        momentum0 += m[j] * data.velocities()[j];
        force_scale += m[j] * std::fabs(data.accelerations()[j]);
    }

    std::vector<double> times;
    for (std::size_t k = 0; k <= grid; ++k) times.push_back(horizon * static_cast<double>(k) / grid);
    for (double s : timeline.shock_times()) {
        if (s > horizon) continue;
        const double eps = timeline.tolerances().event_window(s);
        times.push_back(s);
        if (s - eps > 0.0) times.push_back(s - eps);
        times.push_back(std::min(s + eps, timeline.t_end()));
    }
    std::sort(times.begin(), times.end());

    std::size_t previous_clusters = data.size() + 1;
    for (double t : times) {
        const Partition& p = timeline.partition_at(t);
        if (p.size() > previous_clusters) fail("cluster count increased at t = " + fmt(t));
        previous_clusters = p.size();

        double cluster_mass = 0.0;
        for (const auto& c : p.clusters) {
            double exact = 0.0;
            for (std::size_t j = c.range.first; j <= c.range.last; ++j) exact += m[j];
            if (c.mass != exact) fail("cluster mass differs from member sum at t = " + fmt(t));
            cluster_mass += c.mass;
        }
        if (std::fabs(cluster_mass - data.total_mass()) > 1e-15 * data.total_mass()) {
            fail("total mass drift at t = " + fmt(t));
        }

        const auto x = timeline.positions_at(t);
        const auto v = timeline.velocities_at(t);
        const auto a = timeline.accelerations_at(t);
        double force = 0.0, momentum = 0.0, momentum_scale = 0.0, position_scale = 0.0;
        for (std::size_t j = 0; j < data.size(); ++j) {
            force += m[j] * a[j];
            momentum += m[j] * v[j];
            momentum_scale += m[j] * std::fabs(v[j]);
            position_scale = std::max(position_scale, std::fabs(x[j]));
        }
        momentum_scale += t * force_scale + std::fabs(momentum0);
        if (std::fabs(force - force0) > 1e-12 * (force_scale + 1e-300)) {
            fail("total force drift " + fmt(force - force0) + " at t = " + fmt(t));
        }
        if (std::fabs(momentum - (momentum0 + t * force0)) > 1e-12 * (momentum_scale + 1e-300)) {
            fail("momentum not affine: drift " + fmt(momentum - momentum0 - t * force0) +
                 " at t = " + fmt(t));
        }
        for (std::size_t j = 1; j < x.size(); ++j) {
            if (x[j] < x[j - 1] - 1e-13 * (1.0 + position_scale)) {
                fail("particles " + std::to_string(j - 1) + " and " + std::to_string(j) +
                     " crossed at t = " + fmt(t));
            }
        }
    }
    return result;
}

SuiteResult gvp_suite(const ShockTimeline& timeline, const std::vector<double>& times) {
    SuiteResult result{"gvp-equivalence", true, {}};
    if (!timeline.initial().gvp_admissible()) {
        result.detail = "skipped (accelerations increase somewhere)";
        return result;
    }
    const auto report = gvp_equivalence_check(timeline, times);
    if (!report.ok()) {
        const auto& mm = report.mismatches.front();
        result.passed = false;
        result.detail = "t = " + fmt(mm.time) + ": gvp " + mm.gvp + " vs simulated " + mm.simulated;
    }
    return result;
}

SuiteResult dermoune_suite(const ShockTimeline& timeline, const std::vector<double>& times) {
    SuiteResult result{"dermoune", true, {}};
    for (double t : times) {
        const auto r = dermoune_identity_residuals(timeline, t);
        if (r.max() > 1e-12 * (1.0 + r.scale)) {
            result.passed = false;
            result.detail = "residual " + fmt(r.max()) + " at t = " + fmt(t);
            break;
        }
        if (!conditioning_matches_partition(timeline, t)) {
            result.passed = false;
            result.detail = "position grouping differs from the partition at t = " + fmt(t);
            break;
        }
    }
    return result;
}

InitialData random_instance(std::mt19937_64& rng, std::size_t n,
                            const RandomInstanceOptions& options) {
    std::uniform_real_distribution<double> position(0.0, options.position_span);
    std::uniform_real_distribution<double> log_mass(std::log(options.mass_min),
                                                    std::log(options.mass_max));
    std::normal_distribution<double> velocity(0.0, options.velocity_sd);
    std::normal_distribution<double> acceleration(0.0, options.acceleration_sd);

    for (;;) {
        ParticleTable table;
        for (std::size_t i = 0; i < n; ++i) {
            table.positions.push_back(position(rng));
            table.masses.push_back(std::exp(log_mass(rng)));
            table.velocities.push_back(velocity(rng));
            table.accelerations.push_back(options.zero_acceleration ? 0.0 : acceleration(rng));
        }
        std::sort(table.positions.begin(), table.positions.end());
        if (options.admissible) {
            std::sort(table.accelerations.begin(), table.accelerations.end(), std::greater<>());
        }
        if (std::adjacent_find(table.positions.begin(), table.positions.end()) != table.positions.end()) {
            continue;
        }
        return validate(std::move(table));
    }
}

}  // namespace sticky
