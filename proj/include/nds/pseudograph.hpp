#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nds/grid.hpp"
#include "nds/growth.hpp"
#include "nds/map_sequence.hpp"
#include "nds/transition_graph.hpp"

namespace nds {

/// Number of distinct coarse itineraries of length n (n blocks, n - 1
/// transitions) in the eps-coarsened transition graph. Blocks are
/// b = floor(p_i / eps); a coarse edge exists iff some fine edge joins the
/// two blocks. Requires eps >= 2 * spacing and alpha > spacing / 2.
BigCount count_pseudo_orbit_classes(const MapSequence& F, long n, double epsilon, double alpha,
                                    const Grid& grid);

/// Path budget for separated_pseudo_orbit_count.
inline constexpr double kMaxPseudoOrbitPaths = 5e7;

/// Greedy (n, eps)-separated set of grid alpha-pseudo-orbits. Every length-n
/// path of the time-indexed transition graphs is visited in lexicographic
/// node order and kept if some coordinate lies more than eps from the same
/// coordinate of every path already kept. ConfigurationError when the number
/// of paths exceeds kMaxPseudoOrbitPaths.
long separated_pseudo_orbit_count(const MapSequence& F, long n, double epsilon, double alpha, const Grid& grid);

enum class PseudoCount { Separated, Blocks };

struct PseudoParams {
  BowenParams bowen;
  double alpha = 0.0;
  PseudoCount counting = PseudoCount::Separated;
};

/// Slope of log c_n over [n_min, n_max]; same regression as entropy_estimate.
/// c_n is the greedy separated count, or the coarse itinerary count when
/// `counting` is Blocks.
EntropyEstimate pseudo_entropy(const MapSequence& F, const PseudoParams& params);

/// trace((A_1 ... A_q)^{n/q}): closed grid pseudo-orbits of length n.
/// UnsupportedLength unless q divides n. For a finite sequence the count is
/// trace(A_1 ... A_n) and n must lie in [1, horizon].
BigCount count_periodic_pseudo_orbits(const MapSequence& F, long n, double alpha, const Grid& grid);

/// trace(M^k) for k = 1..k_max with M = A_1 ... A_q.
std::vector<BigCount> closed_walk_traces(const PathCountMatrix& pcm, long k_max);

struct SpectralRadius {
  double value = 0.0;
  long iterations = 0;
};

/// Perron root of A_1 ... A_q by power iteration on M + I (the shift makes
/// periodic graphs converge). NumericError if the relative change does not
/// drop below `tolerance` within `max_iterations`.
SpectralRadius spectral_radius(const PathCountMatrix& pcm, double tolerance = 1e-10,
                               long max_iterations = 100000);

struct PeriodicEntropyResult {
  EntropyEstimate estimate;  // value = log(rho) / q
  double spectral_radius = 0.0;
  long iterations = 0;
  double trace_regression = 0.0;
  bool chain_transitive = false;
  std::vector<std::string> warnings;
};

/// `n_min`/`n_max` bound the trace diagnostic window; only multiples of q
/// inside it are used and zero traces are skipped.
PeriodicEntropyResult periodic_pseudo_entropy(const MapSequence& F, double alpha, const Grid& grid,
                                              long n_min, long n_max);

struct PseudoOrbit {
  double alpha = 0.0;
  long start_step = 1;
  std::vector<int> nodes;
};

/// Throws ConfigurationError if consecutive nodes are not joined by an edge.
void check_pseudo_orbit(const MapSequence& F, const PseudoOrbit& pseudo, const Grid& grid);

struct ShadowTrace {
  double point = 0.0;       // tracing point rounded to double
  std::string point_exact;  // 40 significant digits
  double max_deviation = 0.0;
};

/// Finds y with |F_{[s,k]}(y) - x_k| < eps for every k by pulling the
/// eps-tube back through inverse branches in 50-digit arithmetic. Returns
/// the midpoint of the widest surviving interval, or nullopt when the tube
/// is empty.
std::optional<ShadowTrace> shadowing_trace(const MapSequence& F, long start_step,
                                           std::span<const double> points, double epsilon);

std::optional<ShadowTrace> shadowing_trace(const MapSequence& F, const PseudoOrbit& pseudo,
                                           double epsilon, const Grid& grid);

}  // namespace nds
