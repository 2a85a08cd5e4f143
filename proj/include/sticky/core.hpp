// Core types for the accelerated sticky-particle engine: initial data, clusters,
// partitions, discrete measures and quadratic trajectories.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sticky {

enum class ErrorCode {
    EmptyInput,
    SizeMismatch,
    NonIncreasingPositions,
    NonPositiveMass,
    NonFiniteValue,
    IndexOutOfRange,
    IdenticalPaths,
    PreconditionViolated,
    TimeOutOfRange,
    InadmissibleData,
    InconsistentEndpoints,
    WindowOutOfRange,
    UndefinedField,
    ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Comparison tolerances. `event` scales with time: two meet times t, t' are
// simultaneous when |t - t'| <= event * (1 + |t|).
struct Tolerances {
    double abs = 1e-9;
    double rel = 1e-12;
    double event = 1e-9;

    bool near(double a, double b) const;
    double band(double a, double b) const;
    double event_window(double t) const { return event * (1.0 + (t < 0.0 ? -t : t)); }
};

enum class Summation { naive, kahan };

// Column-oriented particle description as supplied by callers; validate()
// turns it into InitialData.
struct ParticleTable {
    std::vector<double> positions;
    std::vector<double> masses;
    std::vector<double> velocities;
    std::vector<double> accelerations;
};

class InitialData {
public:
    std::size_t size() const noexcept { return positions_.size(); }

    const std::vector<double>& positions() const noexcept { return positions_; }
    const std::vector<double>& masses() const noexcept { return masses_; }
    const std::vector<double>& velocities() const noexcept { return velocities_; }
    const std::vector<double>& accelerations() const noexcept { return accelerations_; }

    double total_mass() const noexcept { return total_mass_; }

    // True iff accelerations are non-increasing in index. Only then does the
    // variational characterization of clusters apply.
    bool gvp_admissible() const noexcept { return gvp_admissible_; }

    ParticleTable table() const;

private:
    friend InitialData validate(ParticleTable table);

    std::vector<double> positions_;
    std::vector<double> masses_;
    std::vector<double> velocities_;
    std::vector<double> accelerations_;
    double total_mass_ = 0.0;
    bool gvp_admissible_ = false;
};

InitialData validate(ParticleTable table);

struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive

    std::size_t size() const noexcept { return last - first + 1; }
    bool contains(std::size_t i) const noexcept { return first <= i && i <= last; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

std::string to_string(const IndexRange& range);

// t -> c0 + c1 t + (c2 / 2) t^2
struct QuadraticPath {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double operator()(double t) const noexcept { return c0 + t * (c1 + 0.5 * c2 * t); }
    double velocity(double t) const noexcept { return c1 + c2 * t; }
    double acceleration() const noexcept { return c2; }

    friend QuadraticPath operator-(const QuadraticPath& p, const QuadraticPath& q) {
        return {p.c0 - q.c0, p.c1 - q.c1, p.c2 - q.c2};
    }
    friend bool operator==(const QuadraticPath&, const QuadraticPath&) = default;
};

struct ClusterAggregates {
    double mass = 0.0;
    double acceleration = 0.0;
    double velocity = 0.0;
    double position = 0.0;
};

// Mass, mean acceleration, velocity and position at time t of the composite
// particle made of initial particles first..last. Sums run left to right.
ClusterAggregates cluster_aggregates(const InitialData& data, std::size_t first, std::size_t last,
                                     double t, Summation summation = Summation::naive);

// The barycentric trajectory of the same block, valid for as long as the block
// stays one cluster.
QuadraticPath cluster_path(const InitialData& data, std::size_t first, std::size_t last,
                           Summation summation = Summation::naive);

struct Cluster {
    IndexRange range;
    double mass = 0.0;
    double acceleration = 0.0;
    double velocity_at_formation = 0.0;
    double position_at_formation = 0.0;
    double formation_time = 0.0;

    QuadraticPath path;
};

Cluster make_cluster(const InitialData& data, IndexRange range, double formation_time);

struct Partition {
    std::vector<Cluster> clusters;

    std::size_t size() const noexcept { return clusters.size(); }
    std::vector<IndexRange> ranges() const;

    // Index of the cluster holding initial particle i.
    std::size_t cluster_of(std::size_t particle) const;
};

// Throws PreconditionViolated unless the ranges are contiguous, ordered and
// cover 0..n-1.
void check_cover(const std::vector<IndexRange>& ranges, std::size_t n);

bool same_blocks(const Partition& a, const Partition& b);
std::string describe(const std::vector<IndexRange>& ranges);

Partition singletons(const InitialData& data);

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    void add(double location, double weight) { atoms_.push_back({location, weight}); }

    double total() const;
    double integrate(const std::function<double(double)>& f) const;
    double mass_in(double lo, double hi) const;  // closed interval

    // Sorted by location; atoms closer than tol.abs are summed into one
    // (placed at their weighted mean when weights are positive).
    DiscreteMeasure coalesced(const Tolerances& tol = {}) const;

    // Weights positive and summing to one within 1e-12.
    bool is_probability() const;

    friend DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b);

private:
    std::vector<Atom> atoms_;
};

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, const Tolerances& tol = {});

struct MeetTime {
    double time = 0.0;
    bool double_root = false;
};

// Real roots of p - q strictly after `after`, ascending. Throws IdenticalPaths
// when p and q coincide.
std::vector<MeetTime> quadratic_meet_times(const QuadraticPath& p, const QuadraticPath& q,
                                           double after, const Tolerances& tol = {});

// Checks "q1(s) > q2(s) for every s > t1" by root analysis. Throws
// PreconditionViolated unless q1 != q2, q1'' >= q2'', t0 < t1,
// q1(t0) <= q2(t0) and q1(t1) >= q2(t1).
bool lemma_quadratic_dominance(const QuadraticPath& q1, const QuadraticPath& q2, double t0,
                               double t1, const Tolerances& tol = {});

}  // namespace sticky
