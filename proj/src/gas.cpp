#include "sticky/gas.hpp"

#include "sticky/flow.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sticky {

// ---------------------------------------------------------------------------
// Test functions

TestFunction TestFunction::bump(double center, double radius) {
    TestFunction fn;
    fn.name = "bump(" + std::to_string(center) + "," + std::to_string(radius) + ")";
    fn.lo = center - radius;
    fn.hi = center + radius;
    fn.f = [=](double x) {
        const double s = (x - center) / radius;
        if (std::fabs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return q * q * q;
    };
    fn.df = [=](double x) {
        const double s = (x - center) / radius;
        if (std::fabs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return -6.0 * s * q * q / radius;
    };
    return fn;
}

TestFunction TestFunction::cubic_bspline(double center, double width) {
    TestFunction fn;
    fn.name = "bspline(" + std::to_string(center) + "," + std::to_string(width) + ")";
    fn.lo = center - 2.0 * width;
    fn.hi = center + 2.0 * width;
    fn.f = [=](double x) {
        const double s = std::fabs((x - center) / width);
        if (s >= 2.0) return 0.0;
        if (s <= 1.0) return 2.0 / 3.0 - s * s + 0.5 * s * s * s;
        const double r = 2.0 - s;
        return r * r * r / 6.0;
    };
    fn.df = [=](double x) {
        const double s = (x - center) / width;
        const double as = std::fabs(s);
        if (as >= 2.0) return 0.0;
        if (as <= 1.0) return (-2.0 * s + 1.5 * s * as) / width;
        const double r = 2.0 - as;
        return -std::copysign(0.5 * r * r, s) / width;
    };
    return fn;
}

bool check_test_function(const TestFunction& fn, double tolerance) {
    const double span = fn.hi - fn.lo;
    for (double x : {fn.lo - span, fn.lo - 1e-9, fn.lo, fn.hi, fn.hi + 1e-9, fn.hi + span}) {
        if (fn.f(x) != 0.0 || fn.df(x) != 0.0) return false;
    }
    const double h = 1e-5 * span;
    const int samples = 400;
    for (int k = 1; k < samples; ++k) {
        const double x = fn.lo + span * k / samples;
        const double fd = (fn.f(x + h) - fn.f(x - h)) / (2.0 * h);
        if (std::fabs(fd - fn.df(x)) > tolerance * std::max(1.0, std::fabs(fn.df(x)))) return false;
    }
    return true;
}

std::vector<TestFunction> standard_test_functions(double lo, double hi) {
    const double span = std::max(hi - lo, 1e-3);
    const double mid = 0.5 * (lo + hi);
    return {
        TestFunction::bump(mid, 0.75 * span + 0.5),
        TestFunction::bump(lo + 0.4 * span, std::max(0.35 * span, 0.1)),
        TestFunction::cubic_bspline(lo + 0.6 * span, std::max(0.25 * span, 0.05)),
    };
}

// ---------------------------------------------------------------------------
// Velocity-space fields

namespace {

struct Member {
    double velocity;
    double mass;
    double cluster_acceleration;  // Gamma_t
    double initial_force;         // sum of m_j theta_j (for E[Gamma_0 | .])
};

std::vector<VelocityGroup> group_by_velocity(std::vector<Member> members, double total_mass,
                                             const Tolerances& tol) {
    std::stable_sort(members.begin(), members.end(),
                     [](const Member& a, const Member& b) { return a.velocity < b.velocity; });
    std::vector<VelocityGroup> groups;
    std::size_t i = 0;
    while (i < members.size()) {
        std::size_t j = i + 1;
        while (j < members.size() && members[j].velocity - members[j - 1].velocity <= tol.abs) ++j;
        double mass = 0.0, momentum = 0.0, force = 0.0, gamma = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            mass += members[k].mass;
            momentum += members[k].mass * members[k].velocity;
            force += members[k].initial_force;
            gamma += members[k].mass * members[k].cluster_acceleration;
        }
        const double mean_gamma = gamma / mass;
        double spread = 0.0;
        // A lone member has no spread; m * theta / m need not round back to theta.
        for (std::size_t k = i; j - i > 1 && k < j; ++k) {
            const double d = members[k].cluster_acceleration - mean_gamma;
            spread += members[k].mass * d * d;
        }
        groups.push_back({momentum / mass, mass / total_mass, force / mass, spread / mass});
        i = j;
    }
    return groups;
}

std::vector<Member> members_of(const InitialData& data, const Partition& p, double t) {
    std::vector<Member> out;
    out.reserve(p.size());
    for (const auto& c : p.clusters) {
        double force = 0.0;
        for (std::size_t j = c.range.first; j <= c.range.last; ++j) {
            force += data.masses()[j] * data.accelerations()[j];
        }
        out.push_back({c.path.velocity(t), c.mass, c.path.acceleration(), force});
    }
    return out;
}

DiscreteMeasure measure_of(const std::vector<VelocityGroup>& groups) {
    DiscreteMeasure mu;
    for (const auto& g : groups) mu.add(g.velocity, g.weight);
    return mu;
}

const VelocityGroup& group_at(const std::vector<VelocityGroup>& groups, double v,
                              const Tolerances& tol) {
    for (const auto& g : groups) {
        if (std::fabs(g.velocity - v) <= tol.band(g.velocity, v)) return g;
    }
    throw Error(ErrorCode::UndefinedField,
                "v = " + std::to_string(v) + " is not in the support of mu(., t)");
}

}  // namespace

DiscreteMeasure VelocityFields::mu() const { return measure_of(current); }
DiscreteMeasure VelocityFields::mu_left() const { return measure_of(left); }

double VelocityFields::w_at(double v) const { return group_at(current, v, tol).w; }
double VelocityFields::a_at(double v) const { return group_at(current, v, tol).a; }

VelocityFields velocity_space_fields(const ShockTimeline& timeline, double t) {
    if (!(t > 0.0) || t > timeline.t_end()) {
        throw Error(ErrorCode::TimeOutOfRange, "velocity fields need 0 < t <= t_end");
    }
    const InitialData& data = timeline.initial();
    const Tolerances& tol = timeline.tolerances();
    VelocityFields fields;
    fields.t = t;
    fields.tol = tol;
    fields.current = group_by_velocity(members_of(data, timeline.partition_at(t), t),
                                       data.total_mass(), tol);
    fields.left = group_by_velocity(members_of(data, timeline.segment_before(t).partition, t),
                                    data.total_mass(), tol);
    return fields;
}

std::vector<VelocityGroup> initial_velocity_groups(const InitialData& data, const Tolerances& tol) {
    std::vector<Member> members;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double m = data.masses()[j];
        const double theta = data.accelerations()[j];
        members.push_back({data.velocities()[j], m, theta, m * theta});
    }
    return group_by_velocity(std::move(members), data.total_mass(), tol);
}

// ---------------------------------------------------------------------------
// Residuals

namespace {

void check_window(const ShockTimeline& timeline, double t1, double t2) {
    if (!(0.0 < t1 && t1 < t2 && t2 <= timeline.t_end())) {
        throw Error(ErrorCode::WindowOutOfRange, "window [" + std::to_string(t1) + ", " +
                                                     std::to_string(t2) +
                                                     "] must satisfy 0 < t1 < t2 <= t_end");
    }
}

std::vector<double> shocks_in(const ShockTimeline& timeline, double t1, double t2) {
    std::vector<double> out;
    for (double s : timeline.shock_times()) {
        if (s > t1 && s <= t2) out.push_back(s);
    }
    return out;
}

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// Integral over [t1, t2], split at the shocks inside the window.
template <class F>
Integral integrate_piecewise(const F& integrand, double t1, double t2,
                             const std::vector<double>& breaks, const QuadratureOptions& quad) {
    using boost::math::quadrature::gauss_kronrod;
    Integral out;
    double a = t1;
    auto piece = [&](double lo, double hi) {
        if (!(hi > lo)) return;
        double err = 0.0;
        out.value += gauss_kronrod<double, 15>::integrate(integrand, lo, hi, quad.max_depth,
                                                          quad.tolerance, &err);
        out.error += err;
    };
    for (double b : breaks) {
        if (b >= t2) break;
        piece(a, b);
        a = b;
    }
    piece(a, t2);
    return out;
}

void finish(EquationResidual& e) {
    e.residual_without_jump = e.lhs - e.transport - e.source;
    e.residual = e.residual_without_jump - e.jump;
}

}  // namespace

double ResidualReport::threshold() const { return std::max(10.0 * quadrature_tolerance, 1e-8); }

bool ResidualReport::passes() const {
    return std::all_of(equations.begin(), equations.end(), [&](const EquationResidual& e) {
        return std::fabs(e.residual) <= threshold();
    });
}

bool ResidualReport::passes_without_jumps() const {
    return std::all_of(equations.begin(), equations.end(), [&](const EquationResidual& e) {
        return std::fabs(e.residual_without_jump) <= threshold();
    });
}

ResidualReport position_space_residuals(const ShockTimeline& timeline, const TestFunction& fn,
                                        double t1, double t2, const QuadratureOptions& quad) {
    check_window(timeline, t1, t2);
    const FlowField flow(timeline);
    const auto breaks = shocks_in(timeline, t1, t2);

    // rho = Law(X_t); u and gamma are read off the Eulerian fields at the atoms.
    auto mass_integral = [&](double t) {
        return flow.law(t).integrate(fn.f);
    };
    auto momentum_integral = [&](double t) {
        double s = 0.0;
        const auto law = flow.law(t);
        for (const auto& atom : law.atoms()) s += atom.weight * fn.f(atom.location) * flow.u(atom.location, t);
        return s;
    };
    auto flux = [&](double t) {
        double s = 0.0;
        const auto law = flow.law(t);
        for (const auto& atom : law.atoms()) s += atom.weight * fn.df(atom.location) * flow.u(atom.location, t);
        return s;
    };
    auto momentum_flux = [&](double t) {
        double s = 0.0;
        const auto law = flow.law(t);
        for (const auto& atom : law.atoms()) {
            const double u = flow.u(atom.location, t);
            s += atom.weight * fn.df(atom.location) * u * u;
        }
        return s;
    };
    auto force = [&](double t) {
        double s = 0.0;
        const auto law = flow.law(t);
        for (const auto& atom : law.atoms()) s += atom.weight * fn.f(atom.location) * flow.gamma(atom.location, t);
        return s;
    };

    ResidualReport report;
    report.space = "position";
    report.test_function = fn.name;
    report.t1 = t1;
    report.t2 = t2;
    report.quadrature_tolerance = quad.tolerance;

    EquationResidual mass{"mass"};
    mass.lhs = mass_integral(t2) - mass_integral(t1);
    const auto transport = integrate_piecewise(flux, t1, t2, breaks, quad);
    mass.transport = transport.value;
    mass.quadrature_error = transport.error;
    finish(mass);

    EquationResidual momentum{"momentum"};
    momentum.lhs = momentum_integral(t2) - momentum_integral(t1);
    const auto mflux = integrate_piecewise(momentum_flux, t1, t2, breaks, quad);
    const auto source = integrate_piecewise(force, t1, t2, breaks, quad);
    momentum.transport = mflux.value;
    momentum.source = source.value;
    momentum.quadrature_error = mflux.error + source.error;
    finish(momentum);

    report.equations = {mass, momentum};
    return report;
}

namespace {

double integrate_groups(const std::vector<VelocityGroup>& groups,
                        const std::function<double(const VelocityGroup&)>& f) {
    double s = 0.0;
    for (const auto& g : groups) s += g.weight * f(g);
    return s;
}

}  // namespace

DiscreteMeasure velocity_jump(const ShockTimeline& timeline, double shock_time) {
    const auto fields = velocity_space_fields(timeline, shock_time);
    return fields.mu() - fields.mu_left();
}

DiscreteMeasure weighted_velocity_jump(const ShockTimeline& timeline, double shock_time) {
    const auto fields = velocity_space_fields(timeline, shock_time);
    DiscreteMeasure out;
    for (const auto& g : fields.current) out.add(g.velocity, g.w * g.weight);
    for (const auto& g : fields.left) out.add(g.velocity, -g.w * g.weight);
    return out;
}

ResidualReport velocity_space_residuals(const ShockTimeline& timeline, const TestFunction& fn,
                                        double t1, double t2, const QuadratureOptions& quad) {
    check_window(timeline, t1, t2);
    const auto breaks = shocks_in(timeline, t1, t2);

    auto f_mu = [&](const std::vector<VelocityGroup>& gs) {
        return integrate_groups(gs, [&](const VelocityGroup& g) { return fn.f(g.velocity); });
    };
    auto f_w_mu = [&](const std::vector<VelocityGroup>& gs) {
        return integrate_groups(gs, [&](const VelocityGroup& g) { return fn.f(g.velocity) * g.w; });
    };
    auto flux = [&](double t) {
        const auto fields = velocity_space_fields(timeline, t);
        return integrate_groups(fields.current,
                                [&](const VelocityGroup& g) { return fn.df(g.velocity) * g.w; });
    };
    auto momentum_flux = [&](double t) {
        const auto fields = velocity_space_fields(timeline, t);
        return integrate_groups(fields.current, [&](const VelocityGroup& g) {
            return fn.df(g.velocity) * (g.w * g.w + g.a);
        });
    };

    const auto at_t1 = velocity_space_fields(timeline, t1);
    const auto at_t2 = velocity_space_fields(timeline, t2);

    ResidualReport report;
    report.space = "velocity";
    report.test_function = fn.name;
    report.t1 = t1;
    report.t2 = t2;
    report.quadrature_tolerance = quad.tolerance;

    EquationResidual mass{"mass"};
    mass.lhs = f_mu(at_t2.current) - f_mu(at_t1.current);
    const auto transport = integrate_piecewise(flux, t1, t2, breaks, quad);
    mass.transport = transport.value;
    mass.quadrature_error = transport.error;

    EquationResidual momentum{"momentum"};
    momentum.lhs = f_w_mu(at_t2.current) - f_w_mu(at_t1.current);
    const auto mflux = integrate_piecewise(momentum_flux, t1, t2, breaks, quad);
    momentum.transport = mflux.value;
    momentum.quadrature_error = mflux.error;

    for (double s : breaks) {
        const auto fields = velocity_space_fields(timeline, s);
        mass.jump += f_mu(fields.current) - f_mu(fields.left);
        momentum.jump += f_w_mu(fields.current) - f_w_mu(fields.left);
    }
    finish(mass);
    finish(momentum);

    report.equations = {mass, momentum};
    return report;
}

double threshold_crossing_measure(const ShockTimeline& timeline, double lo, double hi, double t1,
                                  double t2) {
    if (!(t1 < t2)) throw Error(ErrorCode::WindowOutOfRange, "t1 must be smaller than t2");
    const InitialData& data = timeline.initial();
    auto inside = [&](double v) { return lo <= v && v <= hi ? 1.0 : 0.0; };
    double total = 0.0;
    for (double s : shocks_in(timeline, std::max(t1, 0.0), std::min(t2, timeline.t_end()))) {
        const auto after = timeline.velocities_at(s);
        const auto before = timeline.velocities_at_left(s);
        for (std::size_t j = 0; j < data.size(); ++j) {
            total += data.masses()[j] * (inside(after[j]) - inside(before[j]));
        }
    }
    return total / data.total_mass();
}

std::vector<double> velocity_coincidence_times(const ShockTimeline& timeline, double t_max) {
    std::vector<double> out;
    for (const auto& seg : timeline.segments()) {
        const auto& cs = seg.partition.clusters;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                const double da = cs[i].path.c2 - cs[j].path.c2;
                if (da == 0.0) continue;
                const double t = (cs[j].path.c1 - cs[i].path.c1) / da;
                if (t > 0.0 && t >= seg.start && t < seg.end && t <= t_max) out.push_back(t);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double congestion_delay(const ShockTimeline& timeline) {
    const InitialData& data = timeline.initial();
    const Tolerances& tol = timeline.tolerances();
    double delay = timeline.events().empty() ? kForever : timeline.events().front().time;
    const auto& v = data.velocities();
    const auto& a = data.accelerations();
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            if (tol.near(v[i], v[j]) || a[i] == a[j]) continue;
            const double t = (v[j] - v[i]) / (a[i] - a[j]);
            if (t > 0.0) delay = std::min(delay, t);
        }
    }
    return delay;
}

InitialLimitsReport initial_limits_check(const ShockTimeline& timeline,
                                         const std::vector<TestFunction>& g_list) {
    const InitialData& data = timeline.initial();
    const auto initial = initial_velocity_groups(data, timeline.tolerances());

    InitialLimitsReport report;
    for (const auto& g : g_list) {
        const double a0 = integrate_groups(initial, [&](const VelocityGroup& x) { return g.f(x.velocity) * x.a; });
        report.initial_congestion = std::max(report.initial_congestion, std::fabs(a0));
    }
    report.a0_nonzero = std::any_of(initial.begin(), initial.end(),
                                    [](const VelocityGroup& x) { return x.a > 0.0; });

    for (double t : {1e-2, 1e-3, 1e-4}) {
        if (t > timeline.t_end()) continue;
        LimitSample sample;
        sample.t = t;
        const auto fields = velocity_space_fields(timeline, t);
        for (const auto& g : g_list) {
            auto mass_of = [&](const std::vector<VelocityGroup>& gs) {
                return integrate_groups(gs, [&](const VelocityGroup& x) { return g.f(x.velocity); });
            };
            auto momentum_of = [&](const std::vector<VelocityGroup>& gs) {
                return integrate_groups(gs, [&](const VelocityGroup& x) { return g.f(x.velocity) * x.w; });
            };
            const double congestion =
                integrate_groups(fields.current, [&](const VelocityGroup& x) { return g.f(x.velocity) * x.a; });
            sample.mass_gap = std::max(sample.mass_gap, std::fabs(mass_of(fields.current) - mass_of(initial)));
            sample.momentum_gap =
                std::max(sample.momentum_gap, std::fabs(momentum_of(fields.current) - momentum_of(initial)));
            sample.congestion = std::max(sample.congestion, std::fabs(congestion));
        }
        report.samples.push_back(sample);
    }

    report.monotone = true;
    for (std::size_t k = 1; k < report.samples.size(); ++k) {
        const auto& prev = report.samples[k - 1];
        const auto& cur = report.samples[k];
        const double slack = 1e-15;
        report.monotone = report.monotone && cur.mass_gap <= prev.mass_gap + slack &&
                          cur.momentum_gap <= prev.momentum_gap + slack &&
                          cur.congestion <= prev.congestion + slack;
    }
    report.converged = !report.samples.empty();
    if (report.converged) {
        const auto& first = report.samples.front();
        const auto& last = report.samples.back();
        auto small = [](double now, double start) { return now <= std::max(1e-12, 1e-1 * start); };
        report.converged = small(last.mass_gap, first.mass_gap) &&
                           small(last.momentum_gap, first.momentum_gap) &&
                           last.congestion <= 1e-12;
    }
    return report;
}

CorollaryReport corollary_conditions_check(const ShockTimeline& timeline, double horizon) {
    const InitialData& data = timeline.initial();
    const Tolerances& tol = timeline.tolerances();
    CorollaryReport report;
    report.first_shock = timeline.events().empty() ? kForever : timeline.events().front().time;
    if (!(horizon > 0.0)) {
        horizon = std::isfinite(timeline.t_end())
                      ? timeline.t_end()
                      : (timeline.events().empty() ? 1.0 : 2.0 * timeline.events().back().time);
    }
    horizon = std::min(horizon, timeline.t_end());
    report.horizon = horizon;

    report.mu_continuous = true;
    for (const auto& e : timeline.events()) {
        if (e.time > horizon) break;
        const auto fields = velocity_space_fields(timeline, e.time);
        if (!approx_equal(fields.mu(), fields.mu_left(), tol)) report.mu_continuous = false;
    }

    // a > 0 needs two clusters with the same velocity and different
    // accelerations, which only happens at isolated crossing times.
    for (double t : velocity_coincidence_times(timeline, horizon)) {
        const auto fields = velocity_space_fields(timeline, t);
        for (const auto& g : fields.current) {
            if (g.a > 0.0) {
                report.a_positive_times.push_back(t);
                break;
            }
        }
    }
    bool sampled_zero = true;
    const int samples = 256;
    for (int k = 1; k <= samples; ++k) {
        const double t = horizon * (k - 0.5) / samples;
        const bool at_crossing =
            std::any_of(report.a_positive_times.begin(), report.a_positive_times.end(),
                        [&](double s) { return std::fabs(s - t) <= tol.event_window(s); });
        if (at_crossing) continue;
        for (const auto& g : velocity_space_fields(timeline, t).current) {
            if (g.a > 0.0) sampled_zero = false;
        }
    }
    report.a_zero_almost_everywhere = sampled_zero;

    report.equal_velocity_implies_equal_acceleration = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            if (tol.near(data.velocities()[i], data.velocities()[j]) &&
                !tol.near(data.accelerations()[i], data.accelerations()[j])) {
                report.equal_velocity_implies_equal_acceleration = false;
            }
        }
    }

    if (report.equal_velocity_implies_equal_acceleration) {
        const double end = std::isfinite(report.first_shock) ? report.first_shock : horizon;
        const double t1 = 1e-3 * end;
        const double t2 = (1.0 - 1e-3) * end;
        double vlo = std::numeric_limits<double>::infinity();
        double vhi = -vlo;
        for (double t : {t1, t2}) {
            for (double v : timeline.velocities_at(t)) {
                vlo = std::min(vlo, v);
                vhi = std::max(vhi, v);
            }
        }
        report.pre_shock_without_jumps = true;
        for (const auto& fn : standard_test_functions(vlo, vhi)) {
            if (!velocity_space_residuals(timeline, fn, t1, t2).passes_without_jumps()) {
                report.pre_shock_without_jumps = false;
            }
        }
    }

    report.weak_solution_without_jumps = report.mu_continuous && report.a_zero_almost_everywhere;
    return report;
}

}  // namespace sticky
