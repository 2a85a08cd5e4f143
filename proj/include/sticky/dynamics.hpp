// Event-driven sticky-particle dynamics and a time-stepped oracle.

#pragma once

#include "sticky/core.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace sticky {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

struct MergeGroup {
    std::vector<IndexRange> parts;  // clusters before the shock, left to right
    IndexRange merged;
};

struct ShockEvent {
    double time = 0.0;
    std::vector<MergeGroup> groups;
};

// Partition and cluster paths valid on [start, end).
struct Segment {
    double start = 0.0;
    double end = 0.0;
    Partition partition;
};

struct SimulationOptions {
    Tolerances tol;
    // Harness self-test only: shifts the velocity of the first merged cluster.
    double merge_velocity_perturbation = 0.0;
};

class ShockTimeline {
public:
    ShockTimeline(InitialData initial, double t_end, std::vector<ShockEvent> events,
                  std::vector<Segment> segments, Tolerances tol);

    const InitialData& initial() const noexcept { return initial_; }
    double t_end() const noexcept { return t_end_; }
    const std::vector<ShockEvent>& events() const noexcept { return events_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }
    const Tolerances& tolerances() const noexcept { return tol_; }

    std::vector<double> shock_times() const;

    // Segment in force at t (right-continuous at shocks) and the one in force
    // just before t.
    const Segment& segment_at(double t) const;
    const Segment& segment_before(double t) const;
    const Partition& partition_at(double t) const { return segment_at(t).partition; }

    // Per initial particle. The plain versions are right-continuous at shock
    // times; the *_left versions return left limits.
    std::vector<double> positions_at(double t) const;
    std::vector<double> velocities_at(double t) const;
    std::vector<double> accelerations_at(double t) const;
    std::vector<double> positions_at_left(double t) const;
    std::vector<double> velocities_at_left(double t) const;
    std::vector<double> accelerations_at_left(double t) const;

private:
    void check_time(double t) const;

    InitialData initial_;
    double t_end_;
    std::vector<ShockEvent> events_;
    std::vector<Segment> segments_;
    Tolerances tol_;
};

struct CollisionForecast {
    double time = 0.0;
    // Runs of adjacent cluster indices (into the current partition) to merge.
    std::vector<IndexRange> groups;
};

std::optional<CollisionForecast> next_collision(const Partition& partition, double t_now,
                                                const Tolerances& tol = {});

ShockTimeline simulate(const InitialData& data, double t_end = kForever,
                       const SimulationOptions& options = {});

// Independent oracle: explicit stepping with step dt, merging neighbours that
// are out of order or closer than tol.abs at step boundaries.
Partition brute_force_partition(const InitialData& data, double t, double dt,
                                const Tolerances& tol = {});

// Same oracle evaluated at several ascending times in one sweep.
std::vector<Partition> brute_force_partitions(const InitialData& data,
                                              const std::vector<double>& times, double dt,
                                              const Tolerances& tol = {});

}  // namespace sticky
