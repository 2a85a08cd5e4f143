#include "sticky/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sticky {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::NonIncreasingPositions: return "NonIncreasingPositions";
        case ErrorCode::NonPositiveMass: return "NonPositiveMass";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::IdenticalPaths: return "IdenticalPaths";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
        case ErrorCode::InadmissibleData: return "InadmissibleData";
        case ErrorCode::InconsistentEndpoints: return "InconsistentEndpoints";
        case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
        case ErrorCode::UndefinedField: return "UndefinedField";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

double Tolerances::band(double a, double b) const {
    return abs + rel * std::max(std::fabs(a), std::fabs(b));
}

bool Tolerances::near(double a, double b) const { return std::fabs(a - b) <= band(a, b); }

// ---------------------------------------------------------------------------
// Initial data

ParticleTable InitialData::table() const {
    return {positions_, masses_, velocities_, accelerations_};
}

InitialData validate(ParticleTable table) {
    const std::size_t n = table.positions.size();
    if (n == 0) throw Error(ErrorCode::EmptyInput, "at least one particle is required");
    if (table.masses.size() != n || table.velocities.size() != n ||
        table.accelerations.size() != n) {
        throw Error(ErrorCode::SizeMismatch, "positions, masses, velocities and accelerations "
                                             "must have the same length");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(table.positions[i]) || !std::isfinite(table.masses[i]) ||
            !std::isfinite(table.velocities[i]) || !std::isfinite(table.accelerations[i])) {
            throw Error(ErrorCode::NonFiniteValue, "particle " + std::to_string(i));
        }
        if (!(table.masses[i] > 0.0)) {
            throw Error(ErrorCode::NonPositiveMass, "particle " + std::to_string(i) +
                                                        " has mass " +
                                                        std::to_string(table.masses[i]));
        }
        if (i > 0 && !(table.positions[i - 1] < table.positions[i])) {
            throw Error(ErrorCode::NonIncreasingPositions,
                        "positions[" + std::to_string(i - 1) + "] >= positions[" +
                            std::to_string(i) + "]");
        }
    }

    InitialData data;
    data.positions_ = std::move(table.positions);
    data.masses_ = std::move(table.masses);
    data.velocities_ = std::move(table.velocities);
    data.accelerations_ = std::move(table.accelerations);
    data.total_mass_ = 0.0;
    for (double m : data.masses_) data.total_mass_ += m;
    data.gvp_admissible_ = std::is_sorted(data.accelerations_.rbegin(), data.accelerations_.rend());
    return data;
}

// ---------------------------------------------------------------------------
// Aggregates

namespace {

class Accumulator {
public:
    explicit Accumulator(Summation mode) : mode_(mode) {}

    void add(double x) {
        if (mode_ == Summation::naive) {
            sum_ += x;
            return;
        }
        const double y = x - carry_;
        const double s = sum_ + y;
        carry_ = (s - sum_) - y;
        sum_ = s;
    }
    double value() const { return sum_; }

private:
    Summation mode_;
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check_range(const InitialData& data, std::size_t first, std::size_t last) {
    if (first > last || last >= data.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "[" + std::to_string(first) + ", " + std::to_string(last) +
                        "] with N = " + std::to_string(data.size()));
    }
}

}  // namespace

ClusterAggregates cluster_aggregates(const InitialData& data, std::size_t first, std::size_t last,
                                     double t, Summation summation) {
    check_range(data, first, last);
    const auto& x = data.positions();
    const auto& m = data.masses();
    const auto& v = data.velocities();
    const auto& a = data.accelerations();

    Accumulator mass(summation), force(summation), momentum(summation), moment(summation);
    for (std::size_t j = first; j <= last; ++j) {
        mass.add(m[j]);
        force.add(m[j] * a[j]);
        momentum.add(m[j] * (v[j] + t * a[j]));
        moment.add(m[j] * (x[j] + t * v[j] + 0.5 * t * t * a[j]));
    }
    const double total = mass.value();
    return {total, force.value() / total, momentum.value() / total, moment.value() / total};
}

QuadraticPath cluster_path(const InitialData& data, std::size_t first, std::size_t last,
                           Summation summation) {
    check_range(data, first, last);
    const auto& x = data.positions();
    const auto& m = data.masses();
    const auto& v = data.velocities();
    const auto& a = data.accelerations();

    Accumulator mass(summation), mx(summation), mv(summation), ma(summation);
    for (std::size_t j = first; j <= last; ++j) {
        mass.add(m[j]);
        mx.add(m[j] * x[j]);
        mv.add(m[j] * v[j]);
        ma.add(m[j] * a[j]);
    }
    const double total = mass.value();
    return {mx.value() / total, mv.value() / total, ma.value() / total};
}

Cluster make_cluster(const InitialData& data, IndexRange range, double formation_time) {
    Cluster c;
    c.range = range;
    const auto agg = cluster_aggregates(data, range.first, range.last, formation_time);
    c.mass = agg.mass;
    c.acceleration = agg.acceleration;
    c.velocity_at_formation = agg.velocity;
    c.position_at_formation = agg.position;
    c.formation_time = formation_time;
    c.path = cluster_path(data, range.first, range.last);
    return c;
}

// ---------------------------------------------------------------------------
// Partitions

std::string to_string(const IndexRange& range) {
    if (range.first == range.last) return "{" + std::to_string(range.first) + "}";
    return "{" + std::to_string(range.first) + ".." + std::to_string(range.last) + "}";
}

std::vector<IndexRange> Partition::ranges() const {
    std::vector<IndexRange> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.range);
    return out;
}

std::size_t Partition::cluster_of(std::size_t particle) const {
    auto it = std::partition_point(clusters.begin(), clusters.end(),
                                   [&](const Cluster& c) { return c.range.last < particle; });
    if (it == clusters.end() || !it->range.contains(particle)) {
        throw Error(ErrorCode::IndexOutOfRange, "particle " + std::to_string(particle));
    }
    return static_cast<std::size_t>(it - clusters.begin());
}

void check_cover(const std::vector<IndexRange>& ranges, std::size_t n) {
    std::size_t next = 0;
    for (const auto& r : ranges) {
        if (r.first != next || r.last < r.first) {
            throw Error(ErrorCode::PreconditionViolated, "ranges " + describe(ranges) +
                                                             " do not cover 0.." +
                                                             std::to_string(n - 1) + " in order");
        }
        next = r.last + 1;
    }
    if (next != n) {
        throw Error(ErrorCode::PreconditionViolated,
                    "ranges " + describe(ranges) + " stop before " + std::to_string(n - 1));
    }
}

bool same_blocks(const Partition& a, const Partition& b) { return a.ranges() == b.ranges(); }

std::string describe(const std::vector<IndexRange>& ranges) {
    std::string out;
    for (const auto& r : ranges) out += to_string(r);
    return out;
}

Partition singletons(const InitialData& data) {
    Partition p;
    p.clusters.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) p.clusters.push_back(make_cluster(data, {i, i}, 0.0));
    return p;
}

// ---------------------------------------------------------------------------
// Discrete measures

double DiscreteMeasure::total() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
}

double DiscreteMeasure::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * f(a.location);
    return s;
}

double DiscreteMeasure::mass_in(double lo, double hi) const {
    double s = 0.0;
    for (const auto& a : atoms_) {
        if (lo <= a.location && a.location <= hi) s += a.weight;
    }
    return s;
}

DiscreteMeasure DiscreteMeasure::coalesced(const Tolerances& tol) const {
    std::vector<Atom> sorted = atoms_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::vector<Atom> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j].location - sorted[j - 1].location <= tol.abs) ++j;
        double weight = 0.0, moment = 0.0;
        bool positive = true;
        for (std::size_t k = i; k < j; ++k) {
            weight += sorted[k].weight;
            moment += sorted[k].weight * sorted[k].location;
            positive = positive && sorted[k].weight > 0.0;
        }
        out.push_back({positive ? moment / weight : sorted[i].location, weight});
        i = j;
    }
    return DiscreteMeasure(std::move(out));
}

bool DiscreteMeasure::is_probability() const {
    if (atoms_.empty()) return false;
    for (const auto& a : atoms_) {
        if (!(a.weight > 0.0)) return false;
    }
    return std::fabs(total() - 1.0) <= 1e-12;
}

DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    std::vector<Atom> atoms = a.atoms_;
    for (const auto& x : b.atoms_) atoms.push_back({x.location, -x.weight});
    return DiscreteMeasure(std::move(atoms));
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, const Tolerances& tol) {
    const auto diff = (a - b).coalesced(tol);
    return std::all_of(diff.atoms().begin(), diff.atoms().end(),
                       [&](const Atom& x) { return std::fabs(x.weight) <= tol.abs; });
}

// ---------------------------------------------------------------------------
// Quadratic trajectories

std::vector<MeetTime> quadratic_meet_times(const QuadraticPath& p, const QuadraticPath& q,
                                           double after, const Tolerances& tol) {
    const bool same_c2 = tol.near(p.c2, q.c2);
    const bool same_c1 = tol.near(p.c1, q.c1);
    const bool same_c0 = tol.near(p.c0, q.c0);
    if (same_c2 && same_c1 && same_c0) {
        throw Error(ErrorCode::IdenticalPaths, "paths coincide; treat them as one cluster");
    }

    const QuadraticPath d = p - q;
    const double a = 0.5 * d.c2;
    const double b = d.c1;
    const double c = d.c0;

    std::vector<MeetTime> roots;
    auto keep = [&](double r, bool twice) {
        if (std::isfinite(r) && r > after) roots.push_back({r, twice});
    };

    if (same_c2) {
        if (same_c1) return roots;  // parallel paths at distinct offsets
        double r = -c / b;
        if (a != 0.0) {
            // one Newton step on the full difference
            const double slope = b + 2.0 * a * r;
            if (slope != 0.0) r -= (c + r * (b + a * r)) / slope;
        }
        keep(r, false);
        return roots;
    }

    const double disc = b * b - 4.0 * a * c;
    const double disc_band = tol.rel * (b * b + 4.0 * std::fabs(a * c));
    if (disc < -disc_band) return roots;
    if (disc <= disc_band) {
        keep(-b / (2.0 * a), true);
        return roots;
    }
    const double s = std::sqrt(disc);
    const double qq = -0.5 * (b + std::copysign(s, b));
    double r1 = qq / a;
    double r2 = (qq != 0.0) ? c / qq : -r1;
    if (r1 > r2) std::swap(r1, r2);
    keep(r1, false);
    keep(r2, false);
    return roots;
}

namespace {

// Sign of d(s) as s -> +infinity.
int sign_at_infinity(const QuadraticPath& d) {
    for (double c : {d.c2, d.c1, d.c0}) {
        if (c > 0.0) return 1;
        if (c < 0.0) return -1;
    }
    return 0;
}

}  // namespace

bool lemma_quadratic_dominance(const QuadraticPath& q1, const QuadraticPath& q2, double t0,
                               double t1, const Tolerances& tol) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::PreconditionViolated, what); };
    if (tol.near(q1.c0, q2.c0) && tol.near(q1.c1, q2.c1) && tol.near(q1.c2, q2.c2)) {
        fail("Q1 and Q2 coincide");
    }
    if (q1.c2 < q2.c2 - tol.band(q1.c2, q2.c2)) fail("Q1'' < Q2''");
    if (!(t0 < t1)) fail("t0 >= t1");
    if (q1(t0) > q2(t0) + tol.band(q1(t0), q2(t0))) fail("Q1(t0) > Q2(t0)");
    if (q1(t1) < q2(t1) - tol.band(q1(t1), q2(t1))) fail("Q1(t1) < Q2(t1)");

    const auto roots = quadratic_meet_times(q1, q2, t1, tol);
    for (const auto& r : roots) {
        if (r.time > t1 + tol.event_window(t1)) return false;
    }
    return sign_at_infinity(q1 - q2) > 0;
}

}  // namespace sticky
