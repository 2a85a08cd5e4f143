// Flow map, Eulerian fields and the conditional-expectation identities they
// satisfy when X0 ~ P0 / |P0| and X_t = phi(X0, t).

#pragma once

#include "sticky/dynamics.hpp"

#include <vector>

namespace sticky {

class FlowField {
public:
    explicit FlowField(const ShockTimeline& timeline) : timeline_(&timeline) {}

    const ShockTimeline& timeline() const noexcept { return *timeline_; }

    double phi(std::size_t particle, double t) const;
    double velocity(std::size_t particle, double t) const;
    double acceleration(std::size_t particle, double t) const;

    // Eulerian fields, defined only on the support of P_t. Throws UndefinedField
    // for y farther than tol.abs from every atom.
    double u(double y, double t) const;
    double gamma(double y, double t) const;

    // Law(X_t): one atom per cluster, normalized masses.
    DiscreteMeasure law(double t) const;

private:
    const Cluster& cluster_at(double y, double t) const;

    const ShockTimeline* timeline_;
};

struct DermouneResiduals {
    double position = 0.0;      // X_t - E[X0 + t u0 + t^2/2 gamma0 | X_t]
    double velocity = 0.0;      // u(X_t, t) - E[u0 + t gamma0 | X_t]
    double acceleration = 0.0;  // gamma(X_t, t) - E[gamma0 | X_t]
    double scale = 0.0;         // largest magnitude among the compared terms

    double max() const;
};

// Maximal absolute residuals over clusters. Conditional expectations are
// exact block averages of the initial data, grouped by the timeline partition.
DermouneResiduals dermoune_identity_residuals(const ShockTimeline& timeline, double t);

// Groups initial particles by coincident positions at t (within tol.abs) and
// reports whether this equals the timeline's partition.
bool conditioning_matches_partition(const ShockTimeline& timeline, double t);

struct DerivativeProbe {
    double h = 0.0;
    double position_error = 0.0;   // max over clusters of |FD - E[u0 + t gamma0 | X_t]|
    double position_scaled = 0.0;  // max over clusters of position error / h
    double velocity_error = 0.0;   // max over clusters of |FD of u - E[gamma0 | X_t]|
};

struct RightDerivativeReport {
    double t = 0.0;
    double gap = 0.0;  // time to the next shock (infinite if none)
    std::vector<DerivativeProbe> probes;
    // max over clusters of |mean acceleration| / 2, the predicted limit of
    // position_error / h.
    double predicted_constant = 0.0;
    // Largest |position_error / h - |theta|/2| per cluster among probes with h
    // below the gap, and the largest velocity error there.
    double constant_mismatch = 0.0;
    double velocity_mismatch = 0.0;
};

RightDerivativeReport right_derivative_check(const ShockTimeline& timeline, double t,
                                             const std::vector<double>& steps);

}  // namespace sticky
