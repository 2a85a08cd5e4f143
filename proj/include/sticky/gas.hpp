// Weak-form checks of the pressureless gas systems generated by the sticky
// dynamics.
//
// Position space: rho = Law(X_t), momentum u rho, force gamma rho; both
// fields are weakly continuous so no jump terms appear.
//
// Velocity space: mu = Law(V_t) with V_t = u(X_t, t), w = E[Gamma_0 | V_t],
// a = Var[Gamma_t | V_t]. mu and w mu jump at shocks, and the jumps enter the
// equations as explicit sums over shock times.

#pragma once

#include "sticky/dynamics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sticky {

struct TestFunction {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> df;
    double lo = 0.0;  // support
    double hi = 0.0;

    // (1 - s^2)^3 for |s| < 1 with s = (x - center) / radius.
    static TestFunction bump(double center, double radius);
    // Centered cubic B-spline with knot spacing `width` (support 4 * width).
    static TestFunction cubic_bspline(double center, double width);
};

// f and f' vanish outside the support and f' agrees with centered differences
// of f to `tolerance` on the support.
bool check_test_function(const TestFunction& fn, double tolerance = 1e-6);

// Three built-ins covering [lo, hi]: a wide bump, a narrow bump and a B-spline.
std::vector<TestFunction> standard_test_functions(double lo, double hi);

struct VelocityGroup {
    double velocity = 0.0;
    double weight = 0.0;  // probability mass
    double w = 0.0;       // E[Gamma_0 | V = velocity]
    double a = 0.0;       // Var[Gamma | V = velocity]
};

struct VelocityFields {
    double t = 0.0;
    Tolerances tol;
    std::vector<VelocityGroup> current;  // mu(., t), w, a
    std::vector<VelocityGroup> left;     // mu(., t-), w-, a-

    DiscreteMeasure mu() const;
    DiscreteMeasure mu_left() const;
    // Throws UndefinedField off the support of mu(., t).
    double w_at(double v) const;
    double a_at(double v) const;
};

VelocityFields velocity_space_fields(const ShockTimeline& timeline, double t);

// Law(V_0) with w0 = E[Gamma_0 | V_0] and a0 = Var[Gamma_0 | V_0].
std::vector<VelocityGroup> initial_velocity_groups(const InitialData& data,
                                                   const Tolerances& tol = {});

struct QuadratureOptions {
    double tolerance = 1e-10;
    unsigned max_depth = 18;
};

struct EquationResidual {
    std::string equation;
    double lhs = 0.0;        // difference of the field integrals at t2 and t1
    double transport = 0.0;  // time integral of the flux term
    double source = 0.0;     // time integral of the force term
    double jump = 0.0;       // sum of jump integrals over shocks in (t1, t2]
    double residual = 0.0;   // lhs - transport - source - jump
    double residual_without_jump = 0.0;
    double quadrature_error = 0.0;
};

struct ResidualReport {
    std::string space;
    std::string test_function;
    double t1 = 0.0;
    double t2 = 0.0;
    double quadrature_tolerance = 0.0;
    std::vector<EquationResidual> equations;

    double threshold() const;
    bool passes() const;
    bool passes_without_jumps() const;
};

ResidualReport position_space_residuals(const ShockTimeline& timeline, const TestFunction& f,
                                        double t1, double t2,
                                        const QuadratureOptions& quad = {});

ResidualReport velocity_space_residuals(const ShockTimeline& timeline, const TestFunction& f,
                                        double t1, double t2,
                                        const QuadratureOptions& quad = {});

// Jump measures at one shock: mu(., T) - mu(., T-) and w mu(., T) - w- mu(., T-).
DiscreteMeasure velocity_jump(const ShockTimeline& timeline, double shock_time);
DiscreteMeasure weighted_velocity_jump(const ShockTimeline& timeline, double shock_time);

// Mass-weighted net entries of velocity atoms into [lo, hi] across the shocks
// in (t1, t2].
double threshold_crossing_measure(const ShockTimeline& timeline, double lo, double hi, double t1,
                                  double t2);

// Times in (0, t_max] at which two distinct clusters share a velocity.
std::vector<double> velocity_coincidence_times(const ShockTimeline& timeline, double t_max);

// min(first shock, first time two particles with distinct initial velocities
// share a velocity). a(., t) vanishes on (0, delay).
double congestion_delay(const ShockTimeline& timeline);

struct LimitSample {
    double t = 0.0;
    double mass_gap = 0.0;        // |int g dmu_t - int g dmu_0|
    double momentum_gap = 0.0;    // |int g w dmu_t - int g w0 dmu_0|
    double congestion = 0.0;      // |int g a dmu_t|
};

struct InitialLimitsReport {
    std::vector<LimitSample> samples;  // t = 1e-2, 1e-3, 1e-4
    double initial_congestion = 0.0;   // max over g of |int g a0 dmu_0|
    bool a0_nonzero = false;
    bool monotone = false;
    bool converged = false;            // smallest-t gaps below a tenth of the largest-t ones or 1e-12
};

InitialLimitsReport initial_limits_check(const ShockTimeline& timeline,
                                         const std::vector<TestFunction>& g_list);

struct CorollaryReport {
    double first_shock = 0.0;
    double horizon = 0.0;
    bool mu_continuous = false;           // no shock in (0, horizon] changes Law(V)
    bool a_zero_almost_everywhere = false;
    std::vector<double> a_positive_times; // isolated times with a > 0
    bool equal_velocity_implies_equal_acceleration = false;
    bool pre_shock_without_jumps = false; // only evaluated under the hypothesis above
    bool weak_solution_without_jumps = false;
};

CorollaryReport corollary_conditions_check(const ShockTimeline& timeline, double horizon = 0.0);

}  // namespace sticky
