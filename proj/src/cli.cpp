#include "sticky/cli.hpp"

#include "sticky/core.hpp"
#include "sticky/dynamics.hpp"
#include "sticky/flow.hpp"
#include "sticky/gas.hpp"
#include "sticky/gvp.hpp"
#include "sticky/instance_io.hpp"
#include "sticky/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

namespace sticky::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string instance;
    std::optional<double> t_end;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Common& c, bool with_instance = true) {
    if (with_instance) cmd->add_option("instance", c.instance, "Instance file (JSON)")->required();
    cmd->add_option("--t-end", c.t_end, "Simulation horizon (overrides the instance)");
    cmd->add_option("--tol-abs", c.tol_abs, "Absolute tolerance");
    cmd->add_option("--tol-rel", c.tol_rel, "Relative tolerance");
    cmd->add_option("--out-dir", c.out_dir, "Directory for output tables");
}

struct Loaded {
    InstanceFile file;
    Tolerances tol;
    double t_end = kForever;
};

Loaded load(const Common& c) {
    Loaded l{load_instance(c.instance), {}, kForever};
    l.tol = l.file.tolerances;
    if (c.tol_abs) l.tol.abs = *c.tol_abs;
    if (c.tol_rel) l.tol.rel = *c.tol_rel;
    if (l.file.t_end) l.t_end = *l.file.t_end;
    if (c.t_end) l.t_end = *c.t_end;
    if (!(l.t_end > 0.0)) throw Error(ErrorCode::TimeOutOfRange, "t_end must be positive");
    return l;
}

// One CSV table, written atomically at the end.
class Table {
public:
    explicit Table(std::vector<std::string> header) : width_(header.size()) { row(header); }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw std::logic_error("csv row width");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    void write(const fs::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
        out << text_;
    }

private:
    std::size_t width_;
    std::string text_;
};

std::string r(double x) { return format_real(x); }
std::string u(std::size_t x) { return std::to_string(x); }

fs::path prepare(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << text;
}

double horizon_of(const ShockTimeline& tl) {
    return std::isfinite(tl.t_end()) ? tl.t_end() : sampling_horizon(tl);
}

nlohmann::ordered_json manifest(const std::string& command, const Common& c, const Loaded& l) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["instance"] = c.instance;
    m["particles"] = l.file.data.size();
    m["t_end"] = format_real(l.t_end);
    m["tolerances"] = {{"abs", l.tol.abs}, {"rel", l.tol.rel}, {"event", l.tol.event}};
    return m;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const Common& c, std::size_t samples, std::ostream& out) {
    const Loaded l = load(c);
    SimulationOptions opts;
    opts.tol = l.tol;
    const ShockTimeline tl = simulate(l.file.data, l.t_end, opts);
    const InitialData& data = tl.initial();
    const fs::path dir = prepare(c.out_dir);

    Table events({"time", "group", "first", "last", "mass", "theta", "velocity", "position"});
    for (const auto& e : tl.events()) {
        const Partition& after = tl.partition_at(e.time);
        for (std::size_t g = 0; g < e.groups.size(); ++g) {
            const Cluster& cl = after.clusters[after.cluster_of(e.groups[g].merged.first)];
            events.row({r(e.time), u(g), u(e.groups[g].merged.first), u(e.groups[g].merged.last),
                        r(cl.mass), r(cl.acceleration), r(cl.path.velocity(e.time)),
                        r(cl.path(e.time))});
        }
    }
    events.write(dir / "events.csv");

    Table segments({"start", "end", "first", "last", "mass", "c0", "c1", "c2"});
    for (const auto& s : tl.segments()) {
        for (const auto& cl : s.partition.clusters) {
            segments.row({r(s.start), r(s.end), u(cl.range.first), u(cl.range.last), r(cl.mass),
                          r(cl.path.c0), r(cl.path.c1), r(cl.path.c2)});
        }
    }
    segments.write(dir / "segments.csv");

    const double horizon = horizon_of(tl);
    std::vector<double> times;
    if (samples == 1) times.push_back(0.0);
    for (std::size_t k = 0; samples > 1 && k < samples; ++k) {
        times.push_back(horizon * static_cast<double>(k) / static_cast<double>(samples - 1));
    }
    for (double s : tl.shock_times()) {
        if (s <= horizon) times.push_back(s);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    Table trajectory({"t", "particle", "x", "v", "theta"});
    for (double t : times) {
        const auto x = tl.positions_at(t);
        const auto v = tl.velocities_at(t);
        const auto a = tl.accelerations_at(t);
        for (std::size_t j = 0; j < data.size(); ++j) {
            trajectory.row({r(t), u(j), r(x[j]), r(v[j]), r(a[j])});
        }
    }
    trajectory.write(dir / "trajectory.csv");

    auto m = manifest("simulate", c, l);
    m["samples"] = samples;
    m["events"] = tl.events().size();
    m["files"] = {"events.csv", "segments.csv", "trajectory.csv"};
    write_text(dir / "manifest.json", m.dump(2) + "\n");

    out << data.size() << " particles, " << tl.events().size() << " shock events, "
        << tl.segments().back().partition.size() << " clusters at the end\n";
    for (const auto& e : tl.events()) {
        out << "shock at t = " << r(e.time) << ":";
        for (const auto& g : e.groups) out << " " << to_string(g.merged);
        out << "\n";
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// gvp

std::string first_increase(const InitialData& data) {
    const auto& a = data.accelerations();
    for (std::size_t j = 1; j < a.size(); ++j) {
        if (a[j] > a[j - 1]) {
            return "particles " + u(j - 1) + " and " + u(j) + " (theta " + r(a[j - 1]) + " < " +
                   r(a[j]) + ")";
        }
    }
    return "";
}

int cmd_gvp(const Common& c, std::vector<double> times, std::size_t samples, std::ostream& out,
            std::ostream& err) {
    Loaded l = load(c);
    if (!l.file.data.gvp_admissible()) {
        err << "refused: accelerations increase between " << first_increase(l.file.data)
            << ". The variational characterization requires non-increasing accelerations; "
               "otherwise two-parabola Case 1 applies (the trailing particle accelerates "
               "faster, the paths cross twice and block averages no longer decide clusters).\n";
        return kInputError;
    }
    if (times.empty()) {
        const double h = std::isfinite(l.t_end) ? l.t_end : 1.0;
        for (std::size_t k = 0; k <= samples; ++k) {
            times.push_back(h * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(samples, 1)));
        }
    }
    std::sort(times.begin(), times.end());
    for (double t : times) {
        if (!(t >= 0.0) || t > l.t_end) {
            throw Error(ErrorCode::TimeOutOfRange, "time " + r(t) + " outside [0, t_end]");
        }
    }
    SimulationOptions opts;
    opts.tol = l.tol;
    const double t_sim = std::isfinite(l.t_end) ? l.t_end : std::max(1.0, times.back());
    const ShockTimeline tl = simulate(l.file.data, t_sim, opts);

    Table table({"t", "gvp", "simulated", "verdict"});
    std::size_t mismatches = 0;
    for (double t : times) {
        const std::string simulated = describe(tl.partition_at(t).ranges());
        std::string gvp;
        try {
            gvp = describe(clusters_from_gvp(l.file.data, t, l.tol).ranges());
        } catch (const Error& e) {
            gvp = e.what();
        }
        const bool match = gvp == simulated;
        if (!match) ++mismatches;
        table.row({r(t), "\"" + gvp + "\"", "\"" + simulated + "\"", match ? "MATCH" : "MISMATCH"});
        out << (match ? "MATCH" : "MISMATCH") << " t = " << r(t) << "  gvp " << gvp
            << "  simulated " << simulated << "\n";
    }
    table.write(prepare(c.out_dir) / "gvp.csv");
    out << times.size() - mismatches << "/" << times.size() << " times match\n";
    return mismatches == 0 ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------------------
// gas

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
};

// Ranges of positions and velocities visited during [t1, t2], padded.
std::pair<Range, Range> ranges_over(const ShockTimeline& tl, double t1, double t2) {
    std::vector<double> times;
    for (int k = 0; k <= 64; ++k) times.push_back(t1 + (t2 - t1) * k / 64.0);
    for (double s : tl.shock_times()) {
        if (s > t1 && s <= t2) times.push_back(s);
    }
    Range x, v;
    for (double t : times) {
        for (double y : tl.positions_at(t)) x.add(y);
        for (double y : tl.velocities_at(t)) v.add(y);
        for (double y : tl.velocities_at_left(t)) v.add(y);
    }
    for (Range* q : {&x, &v}) {
        q->lo -= 0.5;
        q->hi += 0.5;
    }
    return {x, v};
}

std::vector<TestFunction> functions_for(const std::vector<TestFunctionSpec>& specs, const Range& range) {
    std::vector<TestFunction> fns;
    for (const auto& s : specs) {
        if (s.kind == "standard") {
            for (auto& f : standard_test_functions(range.lo, range.hi)) fns.push_back(std::move(f));
        } else if (s.kind == "bump") {
            fns.push_back(TestFunction::bump(s.center, s.scale));
        } else {
            fns.push_back(TestFunction::cubic_bspline(s.center, s.scale));
        }
    }
    return fns;
}

void residual_rows(Table& table, const ResidualReport& rep) {
    for (const auto& e : rep.equations) {
        const bool pass = std::fabs(e.residual) <= rep.threshold();
        const bool pass_nj = std::fabs(e.residual_without_jump) <= rep.threshold();
        table.row({"\"" + rep.test_function + "\"", e.equation, r(rep.t1), r(rep.t2), r(e.lhs), r(e.transport),
                   r(e.source), r(e.jump), r(e.residual), r(e.residual_without_jump),
                   r(e.quadrature_error), r(rep.threshold()), pass ? "PASS" : "FAIL",
                   pass_nj ? "PASS" : "FAIL"});
    }
}

const std::vector<std::string> kResidualHeader = {
    "test_function", "equation", "t1", "t2", "lhs", "transport", "source", "jump", "residual",
    "residual_without_jump", "quadrature_error", "threshold", "with_jumps", "without_jumps"};

int cmd_gas(const Common& c, const std::string& window, const std::vector<std::string>& fn_specs,
            std::ostream& out) {
    const auto [t1, t2] = parse_window(window);
    std::vector<TestFunctionSpec> specs;
    for (const auto& s : fn_specs) specs.push_back(parse_test_function_spec(s));
    if (specs.empty()) specs.push_back({"standard", 0.0, 0.0});

    const Loaded l = load(c);
    if (!(0.0 < t1 && t1 < t2 && t2 <= l.t_end)) {
        throw Error(ErrorCode::WindowOutOfRange,
                    "window " + window + " must satisfy 0 < t1 < t2 <= t_end = " + r(l.t_end));
    }
    SimulationOptions opts;
    opts.tol = l.tol;
    const ShockTimeline tl = simulate(l.file.data, l.t_end, opts);
    const auto [xr, vr] = ranges_over(tl, t1, t2);

    Table position(kResidualHeader);
    Table velocity(kResidualHeader);
    bool ok = true;
    for (const auto& fn : functions_for(specs, xr)) {
        const auto rep = position_space_residuals(tl, fn, t1, t2);
        residual_rows(position, rep);
        ok = ok && rep.passes();
    }
    for (const auto& fn : functions_for(specs, vr)) {
        const auto rep = velocity_space_residuals(tl, fn, t1, t2);
        residual_rows(velocity, rep);
        ok = ok && rep.passes();
        for (const auto& e : rep.equations) {
            out << "velocity " << fn.name << " " << e.equation << ": residual " << r(e.residual)
                << ", without jumps " << r(e.residual_without_jump) << "\n";
        }
    }

    Table congestion({"t", "velocity", "weight", "w", "a"});
    for (double t : velocity_coincidence_times(tl, t2)) {
        if (t < t1) continue;
        for (const auto& g : velocity_space_fields(tl, t).current) {
            congestion.row({r(t), r(g.velocity), r(g.weight), r(g.w), r(g.a)});
            if (g.a > 0.0) out << "a(" << r(g.velocity) << ", " << r(t) << ") = " << r(g.a) << "\n";
        }
    }

    const fs::path dir = prepare(c.out_dir);
    position.write(dir / "position_residuals.csv");
    velocity.write(dir / "velocity_residuals.csv");
    congestion.write(dir / "congestion.csv");
    out << (ok ? "all residuals with jump terms within tolerance\n"
               : "some residuals exceed the tolerance\n");
    return ok ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------------------
// dermoune

int cmd_dermoune(const Common& c, std::vector<double> times, std::size_t samples, std::ostream& out) {
    const Loaded l = load(c);
    SimulationOptions opts;
    opts.tol = l.tol;
    const ShockTimeline tl = simulate(l.file.data, l.t_end, opts);
    if (times.empty()) {
        const double h = horizon_of(tl);
        for (std::size_t k = 1; k <= samples; ++k) {
            times.push_back(h * static_cast<double>(k) / static_cast<double>(samples));
        }
    }
    std::sort(times.begin(), times.end());

    Table identities({"t", "position", "velocity", "acceleration", "scale", "verdict"});
    Table derivative({"t", "h", "position_error", "position_scaled", "predicted_constant", "velocity_error"});
    bool ok = true;
    const std::vector<double> steps = {1e-2, 1e-3, 1e-4};
    for (double t : times) {
        const auto res = dermoune_identity_residuals(tl, t);
        const bool pass = res.max() <= 1e-12 * (1.0 + res.scale) && conditioning_matches_partition(tl, t);
        ok = ok && pass;
        identities.row({r(t), r(res.position), r(res.velocity), r(res.acceleration), r(res.scale),
                        pass ? "PASS" : "FAIL"});
        const auto rd = right_derivative_check(tl, t, steps);
        for (const auto& p : rd.probes) {
            derivative.row({r(t), r(p.h), r(p.position_error), r(p.position_scaled),
                            r(rd.predicted_constant), r(p.velocity_error)});
        }
    }
    const fs::path dir = prepare(c.out_dir);
    identities.write(dir / "dermoune.csv");
    derivative.write(dir / "right_derivative.csv");
    out << (ok ? "identities hold" : "identity residual above 1e-12 (1 + scale)") << " at "
        << times.size() << " times\n";
    return ok ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------------------
// fuzz

struct FuzzOutcome {
    std::vector<SuiteResult> suites;
    std::size_t shocks = 0;

    bool passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
    }
};

FuzzOutcome run_suites(const InitialData& data, std::uint64_t seed, const Tolerances& tol,
                       double perturbation) {
    SimulationOptions opts;
    opts.tol = tol;
    opts.merge_velocity_perturbation = perturbation;
    const ShockTimeline tl = simulate(data, kForever, opts);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const double h = sampling_horizon(tl);
    FuzzOutcome o;
    o.shocks = tl.events().size();
    o.suites.push_back(conservation_suite(tl));
    o.suites.push_back(gvp_suite(tl, times_avoiding_shocks(tl, 5, h, 1e-6, rng)));
    o.suites.push_back(dermoune_suite(tl, times_avoiding_shocks(tl, 20, h, 1e-6, rng)));
    return o;
}

void report_failure(std::ostream& out, const std::string& label, const FuzzOutcome& o,
                    const InitialData& data, std::uint64_t seed, const Tolerances& tol) {
    for (const auto& s : o.suites) {
        if (!s.passed) out << "FAIL " << label << " suite " << s.name << ": " << s.detail << "\n";
    }
    out << "reproducing instance:\n" << dump_instance(data, {}, seed, tol);
}

int cmd_fuzz(const Common& c, std::size_t count, std::size_t n_max, std::uint64_t seed,
             bool inject, const std::string& replay, std::ostream& out) {
    Tolerances tol;
    if (c.tol_abs) tol.abs = *c.tol_abs;
    if (c.tol_rel) tol.rel = *c.tol_rel;
    const double perturbation = inject ? 1e-3 : 0.0;
    if (inject) out << "fault injection: first merge velocity shifted by 1e-3\n";

    if (!replay.empty()) {
        const InstanceFile f = load_instance(replay);
        if (!c.tol_abs) tol.abs = f.tolerances.abs;
        if (!c.tol_rel) tol.rel = f.tolerances.rel;
        tol.event = f.tolerances.event;
        const std::uint64_t s = f.seed.value_or(0);
        const auto o = run_suites(f.data, s, tol, perturbation);
        for (const auto& suite : o.suites) {
            out << (suite.passed ? "PASS " : "FAIL ") << suite.name
                << (suite.detail.empty() ? "" : ": " + suite.detail) << "\n";
        }
        return o.passed() ? kSuccess : kVerificationFailure;
    }

    if (count == 0) throw CLI::ValidationError("--count", "must be at least 1");
    if (n_max == 0) throw CLI::ValidationError("--n-max", "must be at least 1");

    Table summary({"seed", "n", "shocks", "conservation", "gvp", "dermoune"});
    std::size_t failures = 0;
    std::optional<fs::path> dir;
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t s = seed + k;
        std::mt19937_64 rng(s);
        std::uniform_int_distribution<std::size_t> size(1, n_max);
        const InitialData data = random_instance(rng, size(rng));
        const auto o = run_suites(data, s, tol, perturbation);
        std::vector<std::string> row = {std::to_string(s), u(data.size()), u(o.shocks)};
        for (const auto& suite : o.suites) row.push_back(suite.passed ? "PASS" : "FAIL");
        summary.row(row);
        if (!o.passed()) {
            ++failures;
            report_failure(out, "seed " + std::to_string(s), o, data, s, tol);
            if (!dir) dir = prepare(c.out_dir);
            write_text(*dir / ("failure_" + std::to_string(s) + ".json"),
                       dump_instance(data, {}, s, tol));
        }
    }
    summary.write(prepare(c.out_dir) / "fuzz_summary.csv");
    out << count << " instances, " << failures << " failures\n";
    return failures == 0 ? kSuccess : kVerificationFailure;
}

}  // namespace

TestFunctionSpec parse_test_function_spec(const std::string& text) {
    if (text == "standard") return {"standard", 0.0, 0.0};
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    const std::string kind = text.substr(0, c1);
    if ((kind != "bump" && kind != "bspline") || c2 == std::string::npos) {
        throw Error(ErrorCode::ParseError,
                    "test function \"" + text + "\": expected standard, bump:C:R or bspline:C:W");
    }
    try {
        std::size_t used1 = 0, used2 = 0;
        const std::string a = text.substr(c1 + 1, c2 - c1 - 1);
        const std::string b = text.substr(c2 + 1);
        const double center = std::stod(a, &used1);
        const double scale = std::stod(b, &used2);
        if (used1 != a.size() || used2 != b.size() || !(scale > 0.0) || !std::isfinite(center)) {
            throw std::invalid_argument("bad number");
        }
        return {kind, center, scale};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "test function \"" + text +
                                               "\": center must be finite and the scale positive");
    }
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("no colon");
        std::size_t n1 = 0, n2 = 0;
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        const double t1 = std::stod(a, &n1);
        const double t2 = std::stod(b, &n2);
        if (n1 != a.size() || n2 != b.size()) throw std::invalid_argument("trailing text");
        return {t1, t2};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "window \"" + text + "\": expected t1:t2");
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Accelerated sticky particles: simulation and verification"};
    app.require_subcommand(1);

    Common sim_c, gvp_c, gas_c, der_c, fuzz_c;
    std::size_t sim_samples = 50;
    auto* sim = app.add_subcommand("simulate", "Run the event-driven dynamics and export tables");
    add_common(sim, sim_c);
    sim->add_option("--samples", sim_samples, "Uniform trajectory samples (event times are added)")
        ->check(CLI::PositiveNumber);

    std::vector<double> gvp_times;
    std::size_t gvp_samples = 10;
    auto* gvp = app.add_subcommand("gvp", "Compare variational clusters with the simulation");
    add_common(gvp, gvp_c);
    gvp->add_option("--times", gvp_times, "Comma-separated times")->delimiter(',');
    gvp->add_option("--samples", gvp_samples, "Uniform times on [0, t_end] when --times is absent");

    std::string window;
    std::vector<std::string> fn_specs;
    auto* gas = app.add_subcommand("gas", "Weak-form residuals of the pressureless gas systems");
    add_common(gas, gas_c);
    gas->add_option("--window", window, "Time window t1:t2")->required();
    gas->add_option("--test-function", fn_specs, "standard | bump:C:R | bspline:C:W (repeatable)");

    std::vector<double> der_times;
    std::size_t der_samples = 20;
    auto* der = app.add_subcommand("dermoune", "Conditional-expectation identities of the flow");
    add_common(der, der_c);
    der->add_option("--times", der_times, "Comma-separated times")->delimiter(',');
    der->add_option("--samples", der_samples, "Uniform times when --times is absent")
        ->check(CLI::PositiveNumber);

    std::size_t count = 0, n_max = 12;
    std::uint64_t seed = 1;
    bool inject = false;
    std::string replay;
    auto* fuzz = app.add_subcommand("fuzz", "Random admissible instances through all property suites");
    add_common(fuzz, fuzz_c, false);
    fuzz->add_option("--count", count, "Number of instances");
    fuzz->add_option("--n-max", n_max, "Largest particle count");
    fuzz->add_option("--seed", seed, "Seed of the first instance; instance k uses seed + k");
    fuzz->add_flag("--inject-fault", inject, "Shift the first merge velocity by 1e-3 (harness self-test)");
    fuzz->add_option("--replay", replay, "Run the suites on one instance file instead");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (sim->parsed()) return cmd_simulate(sim_c, sim_samples, out);
        if (gvp->parsed()) return cmd_gvp(gvp_c, gvp_times, gvp_samples, out, err);
        if (gas->parsed()) return cmd_gas(gas_c, window, fn_specs, out);
        if (der->parsed()) return cmd_dermoune(der_c, der_times, der_samples, out);
        if (fuzz->parsed()) {
            if (replay.empty() && fuzz->count("--count") == 0) {
                throw CLI::ValidationError("--count", "is required");
            }
            return cmd_fuzz(fuzz_c, count, n_max, seed, inject, replay, out);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace sticky::cli
