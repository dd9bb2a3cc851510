#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nds/grid.hpp"
#include "nds/map_sequence.hpp"
#include "nds/transition_graph.hpp"

namespace nds {

/// Nodes lying on an alpha-chain that returns to themselves. Periodic
/// sequences use the phase-lifted graph (nodes x phases) and its strongly
/// connected components; finite sequences search the time-expanded graph for
/// every start time within the horizon.
std::vector<int> chain_recurrent_set(const MapSequence& F, double alpha, const Grid& grid);

/// True iff for all nodes x, y an alpha-chain of length >= 1 started at time
/// 1 leads from x to y. Phases need not match, so a lifted graph with a
/// transient class can still be transitive.
bool is_chain_transitive(const MapSequence& F, double alpha, const Grid& grid);

/// Number of strongly connected components of the lifted graph (periodic only).
int lifted_scc_count(const MapSequence& F, double alpha, const Grid& grid);

/// Approximate non-wandering set: x is kept iff, from every phase, some
/// chain of length r in [1, horizon] ends on a node whose image lies within
/// alpha of x. Periodic sequences only; horizon >= q.
std::vector<int> nonwandering_nodes(const MapSequence& F, double alpha, const Grid& grid, long horizon);

/// Grid nodes within `tol` of F_{[1,k]}(x) for k in [horizon - tail, horizon];
/// the nearest node of each such orbit point is always included.
std::vector<int> omega_limit_nodes(const MapSequence& F, double x, long horizon, long tail, double tol,
                                   const Grid& grid);

struct MixingTimeResult {
  long value = 0;
  int per_point_max_witness = 0;
  long confirm_horizon = 0;
};

/// Default confirmation window 2q + 10 (q = 1 for finite sequences).
long default_confirm_horizon(const MapSequence& F);

/// m_eps(delta, F): for every start node the reachable set R_0 = B_delta(x),
/// R_{k+1} = eps-fattened image of R_k under f_{k+1}, must equal the whole
/// grid for every k in [K, K + confirm_horizon]. Returns the max over x of
/// the least such K. NotChainMixing when some x does not saturate within
/// 50 N steps (or provably never does).
MixingTimeResult chain_mixing_time(const MapSequence& F, double epsilon, double delta, const Grid& grid,
                                   long confirm_horizon);

/// Saturation of delta-balls under the finest pseudo-orbit graph
/// (alpha = spacing, no fattening): a grid-level test of topological mixing.
bool grid_topologically_mixing(const MapSequence& F, double delta, const Grid& grid);

struct RecurrenceReport {
  double alpha = 0.0;
  std::vector<int> chain_recurrent_nodes;
  int scc_count = 0;
  bool transitive = false;
  std::optional<long> mixing_time;
};

RecurrenceReport recurrence_report(const MapSequence& F, double alpha, const Grid& grid);

/// "a-b,c,d-e" run-length form of a sorted node list.
std::string encode_node_ranges(const std::vector<int>& nodes);
std::vector<int> decode_node_ranges(const std::string& text);

}  // namespace nds
