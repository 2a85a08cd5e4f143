#include "sticky/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sticky {

double FlowField::phi(std::size_t particle, double t) const {
    const Partition& p = timeline_->partition_at(t);
    return p.clusters[p.cluster_of(particle)].path(t);
}

double FlowField::velocity(std::size_t particle, double t) const {
    const Partition& p = timeline_->partition_at(t);
    return p.clusters[p.cluster_of(particle)].path.velocity(t);
}

double FlowField::acceleration(std::size_t particle, double t) const {
    const Partition& p = timeline_->partition_at(t);
    return p.clusters[p.cluster_of(particle)].path.acceleration();
}

const Cluster& FlowField::cluster_at(double y, double t) const {
    const Partition& p = timeline_->partition_at(t);
    const Tolerances& tol = timeline_->tolerances();
    const Cluster* best = nullptr;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& c : p.clusters) {
        const double d = std::fabs(c.path(t) - y);
        if (d < best_distance) {
            best_distance = d;
            best = &c;
        }
    }
    if (!best || best_distance > tol.band(y, best->path(t))) {
        throw Error(ErrorCode::UndefinedField,
                    "y = " + std::to_string(y) + " is not in the support of P_t");
    }
    return *best;
}

double FlowField::u(double y, double t) const { return cluster_at(y, t).path.velocity(t); }

double FlowField::gamma(double y, double t) const { return cluster_at(y, t).path.acceleration(); }

DiscreteMeasure FlowField::law(double t) const {
    const Partition& p = timeline_->partition_at(t);
    const double total = timeline_->initial().total_mass();
    DiscreteMeasure mu;
    for (const auto& c : p.clusters) mu.add(c.path(t), c.mass / total);
    return mu;
}

double DermouneResiduals::max() const {
    return std::max({std::fabs(position), std::fabs(velocity), std::fabs(acceleration)});
}

DermouneResiduals dermoune_identity_residuals(const ShockTimeline& timeline, double t) {
    const InitialData& data = timeline.initial();
    const Partition& p = timeline.partition_at(t);
    const FlowField flow(timeline);

    DermouneResiduals r;
    auto track = [&](double& slot, double lhs, double rhs) {
        const double diff = lhs - rhs;
        if (std::fabs(diff) > std::fabs(slot)) slot = diff;
        r.scale = std::max({r.scale, std::fabs(lhs), std::fabs(rhs)});
    };

    const auto& x = data.positions();
    const auto& m = data.masses();
    const auto& v = data.velocities();
    const auto& a = data.accelerations();
    for (const auto& c : p.clusters) {
        // E[. | X_t] on the event {X_t = phi(x_i, t)}: weights m_j / sum m_j.
        double mass = 0.0, pos = 0.0, vel = 0.0, acc = 0.0;
        for (std::size_t j = c.range.first; j <= c.range.last; ++j) {
            mass += m[j];
            pos += m[j] * (x[j] + t * v[j] + 0.5 * t * t * a[j]);
            vel += m[j] * (v[j] + t * a[j]);
            acc += m[j] * a[j];
        }
        const double x_t = flow.phi(c.range.first, t);
        track(r.position, x_t, pos / mass);
        track(r.velocity, flow.u(x_t, t), vel / mass);
        track(r.acceleration, flow.gamma(x_t, t), acc / mass);
    }
    return r;
}

bool conditioning_matches_partition(const ShockTimeline& timeline, double t) {
    const auto positions = timeline.positions_at(t);
    const Tolerances& tol = timeline.tolerances();
    std::vector<IndexRange> groups;
    std::size_t i = 0;
    while (i < positions.size()) {
        std::size_t j = i;
        while (j + 1 < positions.size() && std::fabs(positions[j + 1] - positions[j]) <= tol.abs) ++j;
        groups.push_back({i, j});
        i = j + 1;
    }
    return groups == timeline.partition_at(t).ranges();
}

RightDerivativeReport right_derivative_check(const ShockTimeline& timeline, double t,
                                             const std::vector<double>& steps) {
    const InitialData& data = timeline.initial();
    const Partition& p = timeline.partition_at(t);
    const FlowField flow(timeline);

    RightDerivativeReport report;
    report.t = t;
    report.gap = std::numeric_limits<double>::infinity();
    for (double s : timeline.shock_times()) {
        if (s > t) {
            report.gap = s - t;
            break;
        }
    }
    for (const auto& c : p.clusters) {
        report.predicted_constant = std::max(report.predicted_constant, 0.5 * std::fabs(c.acceleration));
    }

    for (double h : steps) {
        DerivativeProbe probe;
        probe.h = h;
        if (t + h > timeline.t_end()) continue;
        const bool below_gap = h < report.gap;
        for (const auto& c : p.clusters) {
            const auto now = cluster_aggregates(data, c.range.first, c.range.last, t);
            const std::size_t i = c.range.first;
            const double x_t = flow.phi(i, t);
            const double x_h = flow.phi(i, t + h);
            const double pos_err = std::fabs((x_h - x_t) / h - now.velocity);
            const double vel_fd = (flow.u(x_h, t + h) - flow.u(x_t, t)) / h;
            const double vel_err = std::fabs(vel_fd - now.acceleration);

            probe.position_error = std::max(probe.position_error, pos_err);
            probe.position_scaled = std::max(probe.position_scaled, pos_err / h);
            probe.velocity_error = std::max(probe.velocity_error, vel_err);
            if (below_gap) {
                report.constant_mismatch = std::max(
                    report.constant_mismatch, std::fabs(pos_err / h - 0.5 * std::fabs(now.acceleration)));
                report.velocity_mismatch = std::max(report.velocity_mismatch, vel_err);
            }
        }
        report.probes.push_back(probe);
    }
    return report;
}

}  // namespace sticky
