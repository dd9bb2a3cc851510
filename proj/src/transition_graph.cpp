#include "nds/transition_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "nds/errors.hpp"
#include "nds/tolerance.hpp"

namespace nds {

long TransitionGraph::edge_count() const {
  long e = 0;
  for (const auto& r : rows_) e += r.size();
  return e;
}

NodeRange nodes_within(const Grid& grid, double y, double radius, bool closed) {
  const int n = grid.size();
  const auto ok = [&](int j) {
    const double d = std::abs(y - grid.center(j));
    return closed ? less_or_equal(d, radius) : strictly_less(d, radius);
  };
  const double u = y * n - 0.5;
  const double r = radius * n;
  int lo = std::clamp(static_cast<int>(std::ceil(u - r)), 0, n - 1);
  int hi = std::clamp(static_cast<int>(std::floor(u + r)), 0, n - 1);
  if (lo > hi) {
    lo = hi = std::clamp(static_cast<int>(std::lround(u)), 0, n - 1);
  }
  // The index estimate can be off by one either way after rounding.
  while (lo > 0 && ok(lo - 1)) --lo;
  while (hi < n - 1 && ok(hi + 1)) ++hi;
  while (lo <= hi && !ok(lo)) ++lo;
  while (hi >= lo && !ok(hi)) --hi;
  return {lo, hi};
}

TransitionGraph build_transition_graph(const MapSequence& F, long k, double alpha, const Grid& grid) {
  if (!(alpha > grid.spacing() / 2.0))
    throw ConfigurationError("alpha " + std::to_string(alpha) + " must exceed half the grid spacing " +
                             std::to_string(grid.spacing() / 2.0));
  const auto& f = F.map_at(k);
  std::vector<NodeRange> rows(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    rows[static_cast<std::size_t>(i)] = nodes_within(grid, f(grid.center(i)), alpha, false);
    if (rows[static_cast<std::size_t>(i)].empty())
      throw ConfigurationError("alpha " + std::to_string(alpha) + " leaves node " + std::to_string(i) +
                               " without successors");
  }
  return TransitionGraph(k, alpha, grid.size(), std::move(rows));
}

PathCountMatrix build_path_count_matrix(const MapSequence& F, double alpha, const Grid& grid) {
  PathCountMatrix pcm;
  pcm.period = F.period();
  for (int k = 1; k <= pcm.period; ++k) pcm.steps.push_back(build_transition_graph(F, k, alpha, grid));
  return pcm;
}

void write_edge_list(std::ostream& os, const TransitionGraph& g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", g.alpha());
  os << g.step() << ' ' << buf << '\n';
  for (int i = 0; i < g.size(); ++i) {
    const auto& r = g.targets(i);
    for (int j = r.lo; j <= r.hi; ++j) os << i << ' ' << j << '\n';
  }
}

}  // namespace nds
