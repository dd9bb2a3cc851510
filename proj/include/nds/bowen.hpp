#pragma once

#include <span>
#include <vector>

#include "nds/grid.hpp"
#include "nds/growth.hpp"
#include "nds/map_sequence.hpp"

namespace nds {

/// d_n(x, y) = max_{0<=j<n} |F_{[1,j]}(x) - F_{[1,j]}(y)|.
double bowen_distance(const MapSequence& F, double x, double y, long n);

struct PointSet {
  long count = 0;
  std::vector<double> witness;
};

/// Candidate sets up to this size are searched exactly; larger ones use the
/// ascending-coordinate greedy pass.
inline constexpr std::size_t kExactSeparatedLimit = 24;

/// (n, eps)-separated subset of the grid (pairwise d_n > eps). Requires
/// spacing < eps / 4 (ConfigurationError otherwise).
PointSet max_separated_count(const MapSequence& F, long n, double epsilon, const Grid& grid);

/// Same over an arbitrary ascending candidate list.
PointSet max_separated_count(const MapSequence& F, long n, double epsilon,
                             std::span<const double> candidates);

/// Greedy set cover of the grid by d_n-balls of radius eps (closed). Ties go
/// to the smaller coordinate.
PointSet min_spanning_count(const MapSequence& F, long n, double epsilon, const Grid& grid);

/// Slope of log s_n over [n_min, n_max] using max_separated_count.
EntropyEstimate entropy_estimate(const MapSequence& F, const BowenParams& params);

/// Variant restricted to a subset of candidate points (ascending).
EntropyEstimate entropy_estimate(const MapSequence& F, const BowenParams& params,
                                 std::span<const double> candidates);

}  // namespace nds
