#include "sticky/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sticky {

ShockTimeline::ShockTimeline(InitialData initial, double t_end, std::vector<ShockEvent> events,
                             std::vector<Segment> segments, Tolerances tol)
    : initial_(std::move(initial)),
      t_end_(t_end),
      events_(std::move(events)),
      segments_(std::move(segments)),
      tol_(tol) {}

std::vector<double> ShockTimeline::shock_times() const {
    std::vector<double> out;
    out.reserve(events_.size());
    for (const auto& e : events_) out.push_back(e.time);
    return out;
}

void ShockTimeline::check_time(double t) const {
    if (!(t >= 0.0 && t <= t_end_)) {
        throw Error(ErrorCode::TimeOutOfRange,
                    "t = " + std::to_string(t) + " outside [0, " + std::to_string(t_end_) + "]");
    }
}

const Segment& ShockTimeline::segment_at(double t) const {
    check_time(t);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const Segment& s) { return x < s.start; });
    return *std::prev(it);
}

const Segment& ShockTimeline::segment_before(double t) const {
    check_time(t);
    auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                               [](const Segment& s, double x) { return s.start < x; });
    if (it == segments_.begin()) return segments_.front();
    return *std::prev(it);
}

namespace {

enum class Field { position, velocity, acceleration };

std::vector<double> per_particle(const Segment& seg, std::size_t n, double t, Field field) {
    std::vector<double> out(n);
    for (const auto& c : seg.partition.clusters) {
        double value = 0.0;
        switch (field) {
            case Field::position: value = c.path(t); break;
            case Field::velocity: value = c.path.velocity(t); break;
            case Field::acceleration: value = c.path.acceleration(); break;
        }
        for (std::size_t i = c.range.first; i <= c.range.last; ++i) out[i] = value;
    }
    return out;
}

}  // namespace

std::vector<double> ShockTimeline::positions_at(double t) const {
    return per_particle(segment_at(t), initial_.size(), t, Field::position);
}
std::vector<double> ShockTimeline::velocities_at(double t) const {
    return per_particle(segment_at(t), initial_.size(), t, Field::velocity);
}
std::vector<double> ShockTimeline::accelerations_at(double t) const {
    return per_particle(segment_at(t), initial_.size(), t, Field::acceleration);
}
std::vector<double> ShockTimeline::positions_at_left(double t) const {
    return per_particle(segment_before(t), initial_.size(), t, Field::position);
}
std::vector<double> ShockTimeline::velocities_at_left(double t) const {
    return per_particle(segment_before(t), initial_.size(), t, Field::velocity);
}
std::vector<double> ShockTimeline::accelerations_at_left(double t) const {
    return per_particle(segment_before(t), initial_.size(), t, Field::acceleration);
}

// ---------------------------------------------------------------------------
// Event scheduling

namespace {

// Neighbours that already touch (or have crossed through rounding) at t and
// are not moving apart.
bool touching(const Cluster& left, const Cluster& right, double t, const Tolerances& tol) {
    const double gap = right.path(t) - left.path(t);
    if (gap <= 0.0) return true;
    const double closing = left.path.velocity(t) - right.path.velocity(t);
    return gap <= tol.abs && closing >= -tol.abs;
}

std::optional<double> pair_meet_time(const Cluster& left, const Cluster& right, double t_now,
                                     const Tolerances& tol) {
    if (right.path(t_now) - left.path(t_now) <= 0.0) return t_now;
    try {
        const auto roots = quadratic_meet_times(right.path, left.path, t_now, tol);
        if (roots.empty()) return std::nullopt;
        return roots.front().time;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IdenticalPaths) return t_now;
        throw;
    }
}

// Maximal runs of flagged adjacent pairs, as cluster index ranges.
std::vector<IndexRange> runs_of(const std::vector<bool>& pair_flag) {
    std::vector<IndexRange> groups;
    std::size_t i = 0;
    while (i < pair_flag.size()) {
        if (!pair_flag[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < pair_flag.size() && pair_flag[j + 1]) ++j;
        groups.push_back({i, j + 1});
        i = j + 1;
    }
    return groups;
}

Partition merge_groups(const InitialData& data, const Partition& before,
                       const std::vector<IndexRange>& groups, double t,
                       std::vector<MergeGroup>* record) {
    Partition after;
    std::size_t k = 0;
    std::size_t g = 0;
    while (k < before.clusters.size()) {
        if (g < groups.size() && groups[g].first == k) {
            MergeGroup mg;
            for (std::size_t c = groups[g].first; c <= groups[g].last; ++c) {
                mg.parts.push_back(before.clusters[c].range);
            }
            mg.merged = {mg.parts.front().first, mg.parts.back().last};
            after.clusters.push_back(make_cluster(data, mg.merged, t));
            if (record) record->push_back(std::move(mg));
            k = groups[g].last + 1;
            ++g;
        } else {
            after.clusters.push_back(before.clusters[k]);
            ++k;
        }
    }
    return after;
}

}  // namespace

std::optional<CollisionForecast> next_collision(const Partition& partition, double t_now,
                                                const Tolerances& tol) {
    const std::size_t pairs = partition.size() > 0 ? partition.size() - 1 : 0;
    std::vector<std::optional<double>> meet(pairs);
    std::optional<double> earliest;
    for (std::size_t i = 0; i < pairs; ++i) {
        meet[i] = pair_meet_time(partition.clusters[i], partition.clusters[i + 1], t_now, tol);
        if (meet[i] && (!earliest || *meet[i] < *earliest)) earliest = meet[i];
    }
    if (!earliest) return std::nullopt;

    const double cutoff = *earliest + tol.event_window(*earliest);
    std::vector<bool> flag(pairs, false);
    for (std::size_t i = 0; i < pairs; ++i) flag[i] = meet[i] && *meet[i] <= cutoff;
    return CollisionForecast{*earliest, runs_of(flag)};
}

ShockTimeline simulate(const InitialData& data, double t_end, const SimulationOptions& options) {
    if (!(t_end > 0.0)) {
        throw Error(ErrorCode::TimeOutOfRange, "t_end must be positive");
    }
    const Tolerances& tol = options.tol;

    Partition partition = singletons(data);
    double t_now = 0.0;
    std::vector<ShockEvent> events;
    std::vector<Segment> segments;
    bool perturbed = false;

    while (partition.size() > 1) {
        auto forecast = next_collision(partition, t_now, tol);
        if (!forecast || forecast->time > t_end) break;
        const double t = std::max(forecast->time, t_now);

        ShockEvent event;
        event.time = t;
        Partition next = merge_groups(data, partition, forecast->groups, t, &event.groups);

        // Neighbours left touching by the merge join the same shock.
        for (;;) {
            std::vector<bool> flag(next.size() > 0 ? next.size() - 1 : 0, false);
            bool any = false;
            for (std::size_t i = 0; i + 1 < next.size(); ++i) {
                flag[i] = touching(next.clusters[i], next.clusters[i + 1], t, tol);
                any = any || flag[i];
            }
            if (!any) break;
            std::vector<MergeGroup> extra;
            next = merge_groups(data, next, runs_of(flag), t, &extra);
            // Fold cascaded merges into the recorded groups.
            for (auto& mg : extra) {
                MergeGroup combined;
                combined.merged = mg.merged;
                for (const auto& part : mg.parts) {
                    auto hit = std::find_if(event.groups.begin(), event.groups.end(),
                                            [&](const MergeGroup& g) { return g.merged == part; });
                    if (hit != event.groups.end()) {
                        combined.parts.insert(combined.parts.end(), hit->parts.begin(),
                                              hit->parts.end());
                        event.groups.erase(hit);
                    } else {
                        combined.parts.push_back(part);
                    }
                }
                auto pos = std::find_if(event.groups.begin(), event.groups.end(),
                                        [&](const MergeGroup& g) {
                                            return g.merged.first > combined.merged.first;
                                        });
                event.groups.insert(pos, std::move(combined));
            }
        }

        if (options.merge_velocity_perturbation != 0.0 && !perturbed) {
            for (auto& c : next.clusters) {
                if (c.formation_time == t && c.range.size() > 1) {
                    // Keep the position continuous; only the velocity jumps.
                    c.path.c0 -= options.merge_velocity_perturbation * t;
                    c.path.c1 += options.merge_velocity_perturbation;
                    c.velocity_at_formation += options.merge_velocity_perturbation;
                    perturbed = true;
                    break;
                }
            }
        }

        segments.push_back({t_now, t, std::move(partition)});
        events.push_back(std::move(event));
        partition = std::move(next);
        t_now = t;
    }
    segments.push_back({t_now, t_end, std::move(partition)});
    return ShockTimeline(data, t_end, std::move(events), std::move(segments), tol);
}

// ---------------------------------------------------------------------------
// Time-stepped oracle

namespace {

struct SteppedState {
    std::vector<IndexRange> ranges;
    std::vector<QuadraticPath> paths;
};

bool needs_merge(const SteppedState& s, double t, const Tolerances& tol) {
    double prev = s.paths.front()(t);
    for (std::size_t i = 1; i < s.paths.size(); ++i) {
        const double x = s.paths[i](t);
        if (x - prev <= tol.abs) return true;
        prev = x;
    }
    return false;
}

void settle(const InitialData& data, SteppedState& s, double t, const Tolerances& tol) {
    while (needs_merge(s, t, tol)) {
        bool merged = false;
        SteppedState next;
        std::size_t i = 0;
        while (i < s.ranges.size()) {
            std::size_t j = i;
            while (j + 1 < s.ranges.size() && s.paths[j + 1](t) - s.paths[j](t) <= tol.abs) ++j;
            if (j == i) {
                next.ranges.push_back(s.ranges[i]);
                next.paths.push_back(s.paths[i]);
            } else {
                const IndexRange r{s.ranges[i].first, s.ranges[j].last};
                const auto agg = cluster_aggregates(data, r.first, r.last, 0.0);
                next.ranges.push_back(r);
                next.paths.push_back({agg.position, agg.velocity, agg.acceleration});
                merged = true;
            }
            i = j + 1;
        }
        s = std::move(next);
        if (!merged) return;
    }
}

Partition to_partition(const InitialData& data, const SteppedState& s) {
    Partition p;
    for (const auto& r : s.ranges) p.clusters.push_back(make_cluster(data, r, 0.0));
    return p;
}

}  // namespace

std::vector<Partition> brute_force_partitions(const InitialData& data,
                                              const std::vector<double>& times, double dt,
                                              const Tolerances& tol) {
    if (!(dt > 0.0)) throw Error(ErrorCode::PreconditionViolated, "dt must be positive");
    if (!std::is_sorted(times.begin(), times.end())) {
        throw Error(ErrorCode::PreconditionViolated, "times must be ascending");
    }

    SteppedState state;
    for (std::size_t i = 0; i < data.size(); ++i) {
        state.ranges.push_back({i, i});
        state.paths.push_back({data.positions()[i], data.velocities()[i], data.accelerations()[i]});
    }

    std::vector<Partition> out;
    std::size_t step = 0;
    double t = 0.0;
    for (double target : times) {
        if (target < 0.0) throw Error(ErrorCode::TimeOutOfRange, "negative time");
        while (t < target) {
            ++step;
            t = std::min(static_cast<double>(step) * dt, target);
            settle(data, state, t, tol);
        }
        out.push_back(to_partition(data, state));
    }
    return out;
}

Partition brute_force_partition(const InitialData& data, double t, double dt,
                                const Tolerances& tol) {
    return brute_force_partitions(data, {t}, dt, tol).front();
}

}  // namespace sticky
