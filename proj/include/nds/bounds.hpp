#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "nds/grid.hpp"
#include "nds/growth.hpp"
#include "nds/map_sequence.hpp"

namespace nds {

enum class BoundKind { MixingTimeLB, EntropyLB, FixGrowth };

std::string to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::MixingTimeLB;
  double value = 0.0;
  std::map<std::string, double> inputs;
  std::vector<std::string> warnings;
};

/// Lower bound on the chain mixing time of a c-Lipschitz system on a space of
/// diameter D. c > 1 uses the logarithmic regime, c = 1 the linear one.
/// DomainError unless 0 < epsilon <= delta <= D/2 and c >= 1.
double mixing_time_lower_bound(double c, double D, double delta, double epsilon);

/// Least-squares slope of log N(s) against log(1/s), where N(s) counts the
/// occupied boxes [k s, (k+1) s). Identical points give 0.
double box_dimension(std::span<const double> points, std::span<const double> scales);

/// d' * max over delta of log(1/delta) / m_eps(delta, F), with d' the box
/// dimension of the grid centres. NotChainMixing when the grid test for
/// topological mixing fails or a mixing time does not exist.
BoundReport entropy_lower_bound(const MapSequence& F, std::span<const double> delta_list, double epsilon,
                                const Grid& grid);

/// Regression slope of log #Fix(F_{[1,n]}) over n in `n_list` (periodic F,
/// each n a multiple of q). Propagates NonIsolatedFixedPoints.
EntropyEstimate fix_growth_entropy(const MapSequence& F, std::span<const long> n_list);

}  // namespace nds
