// Cluster partitions from the generalized variational principle, computed
// directly from the initial data without running the dynamics.
//
// With eta(t) = x + t u0(x) + t^2/2 gamma0(x) and mass-weighted averages over
// blocks of consecutive particles:
//   * interior:  every prefix of a cluster averages at least its complement;
//   * left endpoint alpha: avg[j, alpha-1] < avg[alpha, k-1] for all j < alpha < k;
//   * right endpoint beta: avg[j, beta] < avg[beta+1, k] for all j <= beta < k.
// The index bounds j, k include the blocks reaching the ends of the line.

#pragma once

#include "sticky/core.hpp"
#include "sticky/dynamics.hpp"

#include <string>
#include <vector>

namespace sticky {

class GvpFunctional {
public:
    // With include_acceleration = false the t^2 term is dropped.
    GvpFunctional(const InitialData& data, double t, Tolerances tol = {},
                  bool include_acceleration = true);

    std::size_t size() const noexcept { return mass_.size() - 1; }
    double time() const noexcept { return t_; }
    const Tolerances& tolerances() const noexcept { return tol_; }

    // Mass-weighted mean of eta(t) over particles first..last.
    double average(std::size_t first, std::size_t last) const;

private:
    double t_;
    Tolerances tol_;
    bool include_acceleration_;
    std::vector<double> mass_, mx_, mv_, ma_;  // prefix sums, length N + 1
};

bool interior_condition(const GvpFunctional& F, std::size_t first, std::size_t last,
                        std::size_t split);
bool is_left_endpoint(const GvpFunctional& F, std::size_t alpha);
bool is_right_endpoint(const GvpFunctional& F, std::size_t beta);

// Smallest rhs - lhs over all comparisons of the endpoint tests; negative
// means the test fails. Used to flag near-equalities.
double left_endpoint_margin(const GvpFunctional& F, std::size_t alpha);
double right_endpoint_margin(const GvpFunctional& F, std::size_t beta);

// Partition into [alpha, beta] blocks certified by the endpoint tests. Throws
// InadmissibleData for increasing accelerations and InconsistentEndpoints when
// the endpoint sets do not interleave into a cover.
Partition clusters_from_gvp(const InitialData& data, double t, const Tolerances& tol = {});

// The unaccelerated principle (blocks of x + t u0), evaluated by direct
// summation. Meaningful on its own only for zero accelerations.
Partition classical_clusters(const InitialData& data, double t, const Tolerances& tol = {});

struct GvpMismatch {
    double time = 0.0;
    std::string gvp;         // block description, or the error message
    std::string simulated;
};

struct GvpEquivalenceReport {
    std::size_t checked = 0;
    std::vector<GvpMismatch> mismatches;
    // Times at which some endpoint test sat within tolerance of equality.
    std::vector<double> near_equalities;

    bool ok() const noexcept { return mismatches.empty(); }
};

GvpEquivalenceReport gvp_equivalence_check(const InitialData& data,
                                           const std::vector<double>& times,
                                           const Tolerances& tol = {});
GvpEquivalenceReport gvp_equivalence_check(const ShockTimeline& timeline,
                                           const std::vector<double>& times);

}  // namespace sticky
