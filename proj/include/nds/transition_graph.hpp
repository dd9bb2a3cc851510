#pragma once

#include <iosfwd>
#include <vector>

#include "nds/grid.hpp"
#include "nds/map_sequence.hpp"

namespace nds {

/// Contiguous node interval [lo, hi] (inclusive).
struct NodeRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return hi < lo; }
  int size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(int j) const { return j >= lo && j <= hi; }
};

/// Edges i -> j at time step k with |f_k(p_i) - p_j| < alpha. In one
/// dimension each row is a contiguous index interval.
class TransitionGraph {
 public:
  TransitionGraph(long step, double alpha, int size, std::vector<NodeRange> rows)
      : step_(step), alpha_(alpha), size_(size), rows_(std::move(rows)) {}

  long step() const { return step_; }
  double alpha() const { return alpha_; }
  int size() const { return size_; }
  const NodeRange& targets(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<NodeRange>& rows() const { return rows_; }
  bool has_edge(int i, int j) const { return targets(i).contains(j); }
  long edge_count() const;

 private:
  long step_;
  double alpha_;
  int size_;
  std::vector<NodeRange> rows_;
};

/// ConfigurationError unless alpha > spacing / 2.
TransitionGraph build_transition_graph(const MapSequence& F, long k, double alpha, const Grid& grid);

/// Node range within `radius` of y on the grid: strict (`|y - p_j| < r`) or
/// closed (`<= r`), both with the snap tolerance.
NodeRange nodes_within(const Grid& grid, double y, double radius, bool closed);

/// A_1 .. A_q for a periodic sequence.
struct PathCountMatrix {
  int period = 1;
  std::vector<TransitionGraph> steps;
};

PathCountMatrix build_path_count_matrix(const MapSequence& F, double alpha, const Grid& grid);

/// Text export: header `step alpha`, then one `src dst` line per edge.
void write_edge_list(std::ostream& os, const TransitionGraph& g);

}  // namespace nds
