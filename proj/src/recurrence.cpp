#include "nds/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "nds/errors.hpp"
#include "nds/systems.hpp"
#include "nds/tolerance.hpp"

namespace nds {

namespace {

struct SccResult {
  std::vector<int> component;  // per lifted node
  std::vector<int> size;       // per component
  int count = 0;
};

// Iterative Tarjan over the phase-lifted graph: node id = phase * N + i,
// edges (i, m) -> (j, m + 1 mod q) for j in A_{m+1}(i).
SccResult lifted_scc(const PathCountMatrix& pcm) {
  const int n = pcm.steps.front().size();
  const int q = pcm.period;
  const int total = n * q;
  const auto succ_range = [&](int v) {
    const int m = v / n, i = v % n;
    const auto& r = pcm.steps[static_cast<std::size_t>(m)].targets(i);
    const int base = ((m + 1) % q) * n;
    return std::pair{base + r.lo, base + r.hi};
  };

  SccResult res;
  res.component.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> index(static_cast<std::size_t>(total), -1), low(static_cast<std::size_t>(total), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(total), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, int>> call;  // (node, next successor)
  int counter = 0;

  for (int root = 0; root < total; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.emplace_back(root, succ_range(root).first);
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const int hi = succ_range(v).second;
      if (next <= hi) {
        const int w = next++;
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = 1;
          call.emplace_back(w, succ_range(w).first);
        } else if (on_stack[wi]) {
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[wi]);
        }
        continue;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[static_cast<std::size_t>(parent)] =
            std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done)]);
      }
      if (low[static_cast<std::size_t>(done)] == index[static_cast<std::size_t>(done)]) {
        int sz = 0;
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          res.component[static_cast<std::size_t>(w)] = res.count;
          ++sz;
          if (w == done) break;
        }
        res.size.push_back(sz);
        ++res.count;
      }
    }
  }
  return res;
}

// Reachability for finite sequences: reach[y] holds (as a bitset over
// sources x) every x with an alpha-chain x -> y of length >= 1 starting at
// some time m in [1, horizon], or at time 1 only.
class FiniteReach {
 public:
  FiniteReach(const MapSequence& F, double alpha, const Grid& grid, bool from_time_one = false)
      : n_(grid.size()) {
    words_ = (static_cast<std::size_t>(n_) + 63) / 64;
    const long horizon = *F.horizon();
    std::vector<TransitionGraph> graphs;
    for (long t = 1; t <= horizon; ++t) graphs.push_back(build_transition_graph(F, t, alpha, grid));

    reach_.assign(static_cast<std::size_t>(n_) * words_, 0);
    std::vector<std::uint64_t> cur, next;
    for (long m = 1; m <= (from_time_one ? 1 : horizon); ++m) {
      cur.assign(static_cast<std::size_t>(n_) * words_, 0);
      for (int j = 0; j < n_; ++j) set(cur, j, j);
      for (long t = m; t <= horizon; ++t) {
        next.assign(cur.size(), 0);
        const auto& g = graphs[static_cast<std::size_t>(t - 1)];
        for (int i = 0; i < n_; ++i) {
          const auto& r = g.targets(i);
          const std::uint64_t* src = &cur[static_cast<std::size_t>(i) * words_];
          for (int j = r.lo; j <= r.hi; ++j) {
            std::uint64_t* dst = &next[static_cast<std::size_t>(j) * words_];
            for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
          }
        }
        for (std::size_t w = 0; w < next.size(); ++w) reach_[w] |= next[w];
        cur.swap(next);
      }
    }
  }

  bool reaches(int x, int y) const {
    return (reach_[static_cast<std::size_t>(y) * words_ + static_cast<std::size_t>(x) / 64] >> (x % 64)) & 1U;
  }

 private:
  void set(std::vector<std::uint64_t>& bits, int row, int col) const {
    bits[static_cast<std::size_t>(row) * words_ + static_cast<std::size_t>(col) / 64] |= std::uint64_t{1} << (col % 64);
  }

  int n_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> reach_;
};

void require_alpha(double alpha, const Grid& grid) {
  if (!(alpha > grid.spacing() / 2.0))
    throw ConfigurationError("alpha must exceed half the grid spacing");
}

std::uint64_t hash_state(const std::vector<char>& set, long phase) {
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(phase);
  for (char c : set) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Iterates R_{k+1} = dilate(image_k(R_k), radius) from R_0 and returns the
// first K with R_k full for all k in [K, K + confirm], or -1 if that never
// happens (detected via a repeated state) or the budget runs out.
class Saturation {
 public:
  // rows[s] holds the image ranges used at step s + 1 (periodic: indexed
  // modulo rows.size(); finite: at most rows.size() steps are available).
  Saturation(std::vector<std::vector<NodeRange>> rows, bool periodic, int radius, long confirm, long budget)
      : rows_(std::move(rows)), periodic_(periodic), radius_(radius), confirm_(confirm), budget_(budget) {}

  long run(const NodeRange& start) const {
    const int n = static_cast<int>(rows_.front().size());
    std::vector<char> cur(static_cast<std::size_t>(n), 0), next(static_cast<std::size_t>(n));
    std::vector<int> diff(static_cast<std::size_t>(n) + 1);
    for (int j = start.lo; j <= start.hi; ++j) cur[static_cast<std::size_t>(j)] = 1;

    std::unordered_map<std::uint64_t, long> seen;
    std::vector<char> full_at{0};
    long run_start = -1;
    const long q = static_cast<long>(rows_.size());
    for (long k = 1; k <= budget_ + confirm_; ++k) {
      if (!periodic_ && k > q) return -1;  // horizon exhausted
      const auto& rows = rows_[static_cast<std::size_t>((k - 1) % q)];
      std::fill(diff.begin(), diff.end(), 0);
      for (int i = 0; i < n; ++i) {
        if (!cur[static_cast<std::size_t>(i)]) continue;
        const auto& r = rows[static_cast<std::size_t>(i)];
        ++diff[static_cast<std::size_t>(std::max(0, r.lo - radius_))];
        --diff[static_cast<std::size_t>(std::min(n - 1, r.hi + radius_)) + 1];
      }
      int run = 0, filled = 0;
      for (int j = 0; j < n; ++j) {
        run += diff[static_cast<std::size_t>(j)];
        next[static_cast<std::size_t>(j)] = run > 0 ? 1 : 0;
        filled += run > 0 ? 1 : 0;
      }
      cur.swap(next);
      const bool full = filled == n;
      full_at.push_back(full ? 1 : 0);
      if (full) {
        if (run_start < 0) run_start = k;
        if (k - run_start >= confirm_) return run_start;
      } else {
        run_start = -1;
        if (k > budget_) return -1;
      }
      if (periodic_) {
        const auto [it, inserted] = seen.emplace(hash_state(cur, k % q), k);
        if (!inserted) {
          // The state sequence is periodic from it->second on.
          bool all_full = true;
          for (long s = it->second + 1; s <= k; ++s) all_full = all_full && full_at[static_cast<std::size_t>(s)];
          if (!all_full) return -1;
        }
      }
    }
    return -1;
  }

 private:
  std::vector<std::vector<NodeRange>> rows_;
  bool periodic_;
  int radius_;
  long confirm_;
  long budget_;
};

template <class Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

std::vector<std::vector<NodeRange>> step_rows(const MapSequence& F, const Grid& grid, double radius, bool closed) {
  const long steps = F.is_periodic() ? F.period() : *F.horizon();
  std::vector<std::vector<NodeRange>> rows;
  for (long t = 1; t <= steps; ++t) {
    const auto& f = F.map_at(t);
    std::vector<NodeRange> r(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i)
      r[static_cast<std::size_t>(i)] = nodes_within(grid, f(grid.center(i)), radius, closed);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<int> chain_recurrent_set(const MapSequence& F, double alpha, const Grid& grid) {
  require_alpha(alpha, grid);
  const int n = grid.size();
  std::vector<int> out;
  if (!F.is_periodic()) {
    const FiniteReach reach(F, alpha, grid);
    for (int x = 0; x < n; ++x)
      if (reach.reaches(x, x)) out.push_back(x);
    return out;
  }
  const auto pcm = build_path_count_matrix(F, alpha, grid);
  const auto scc = lifted_scc(pcm);
  for (int x = 0; x < n; ++x) {
    bool recurrent = false;
    for (int m = 0; m < pcm.period && !recurrent; ++m) {
      const int v = m * n + x;
      recurrent = scc.size[static_cast<std::size_t>(scc.component[static_cast<std::size_t>(v)])] > 1 ||
                  (pcm.period == 1 && pcm.steps[0].has_edge(x, x));
    }
    if (recurrent) out.push_back(x);
  }
  return out;
}

int lifted_scc_count(const MapSequence& F, double alpha, const Grid& grid) {
  require_alpha(alpha, grid);
  return lifted_scc(build_path_count_matrix(F, alpha, grid)).count;
}

bool is_chain_transitive(const MapSequence& F, double alpha, const Grid& grid) {
  require_alpha(alpha, grid);
  const int n = grid.size();
  if (!F.is_periodic()) {
    const FiniteReach reach(F, alpha, grid, true);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!reach.reaches(x, y)) return false;
    return true;
  }

  // Chains start at time 1 (phase 0). Tarjan numbers components sinks
  // first, so successor components are finished before their predecessors.
  const auto pcm = build_path_count_matrix(F, alpha, grid);
  const auto scc = lifted_scc(pcm);
  const int q = pcm.period;
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(scc.count));
  for (int v = 0; v < n * q; ++v) members[static_cast<std::size_t>(scc.component[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<std::uint64_t> reach(static_cast<std::size_t>(scc.count) * words, 0);
  const auto row = [&](int c) { return reach.data() + static_cast<std::size_t>(c) * words; };
  const auto successors = [&](int v, auto&& fn) {
    const int m = v / n;
    const auto& r = pcm.steps[static_cast<std::size_t>(m)].targets(v % n);
    const int base = ((m + 1) % q) * n;
    for (int j = r.lo; j <= r.hi; ++j) fn(base + j);
  };
  for (int c = 0; c < scc.count; ++c) {
    std::uint64_t* dst = row(c);
    for (int v : members[static_cast<std::size_t>(c)]) {
      const int x = v % n;
      dst[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (x % 64);
      successors(v, [&](int w) {
        const int cw = scc.component[static_cast<std::size_t>(w)];
        if (cw == c) return;
        const std::uint64_t* src = row(cw);
        for (std::size_t k = 0; k < words; ++k) dst[k] |= src[k];
      });
    }
  }

  std::vector<std::uint64_t> acc(words);
  for (int x = 0; x < n; ++x) {
    std::fill(acc.begin(), acc.end(), 0);
    successors(x, [&](int w) {
      const std::uint64_t* src = row(scc.component[static_cast<std::size_t>(w)]);
      for (std::size_t k = 0; k < words; ++k) acc[k] |= src[k];
    });
    for (int y = 0; y < n; ++y)
      if (!((acc[static_cast<std::size_t>(y) / 64] >> (y % 64)) & 1U)) return false;
  }
  return true;
}

std::vector<int> nonwandering_nodes(const MapSequence& F, double alpha, const Grid& grid, long horizon) {
  if (!F.is_periodic()) throw ConfigurationError("nonwandering_nodes: periodic sequences only");
  const long q = F.period();
  if (horizon < q) throw ConfigurationError("nonwandering_nodes: horizon must be >= period");
  const auto pcm = build_path_count_matrix(F, alpha, grid);
  const int n = grid.size();

  // A node that returns to itself lies on a cycle, so only chain-recurrent
  // nodes need the search.
  std::vector<int> out;
  std::vector<char> cur(static_cast<std::size_t>(n)), next(static_cast<std::size_t>(n));
  std::vector<int> diff(static_cast<std::size_t>(n) + 1);
  for (int x : chain_recurrent_set(F, alpha, grid)) {
    bool every_phase = true;
    for (long m = 0; m < q && every_phase; ++m) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[static_cast<std::size_t>(x)] = 1;
      std::unordered_set<std::uint64_t> seen;
      bool returned = false;
      for (long r = 1; r <= horizon && !returned; ++r) {
        const auto& g = pcm.steps[static_cast<std::size_t>((m + r - 1) % q)];
        std::fill(diff.begin(), diff.end(), 0);
        for (int i = 0; i < n; ++i) {
          if (!cur[static_cast<std::size_t>(i)]) continue;
          ++diff[static_cast<std::size_t>(g.targets(i).lo)];
          --diff[static_cast<std::size_t>(g.targets(i).hi) + 1];
        }
        int run = 0;
        for (int j = 0; j < n; ++j) {
          run += diff[static_cast<std::size_t>(j)];
          next[static_cast<std::size_t>(j)] = run > 0 ? 1 : 0;
        }
        cur.swap(next);
        returned = cur[static_cast<std::size_t>(x)] != 0;
        if (!seen.insert(hash_state(cur, (m + r) % q)).second) break;
      }
      every_phase = returned;
    }
    if (every_phase) out.push_back(x);
  }
  return out;
}

std::vector<int> omega_limit_nodes(const MapSequence& F, double x, long horizon, long tail, double tol,
                                   const Grid& grid) {
  if (!(tail < horizon) || tail < 0) throw ConfigurationError("omega_limit_nodes: need 0 <= tail < horizon");
  const auto seg = orbit_segment(F, 1, horizon, x);
  std::vector<int> out;
  for (long k = horizon - tail; k <= horizon; ++k) {
    const double y = seg.points[static_cast<std::size_t>(k)];
    out.push_back(grid.nearest(y));
    const auto r = nodes_within(grid, y, tol, true);
    for (int j = r.lo; j <= r.hi; ++j) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long default_confirm_horizon(const MapSequence& F) { return 2L * (F.is_periodic() ? F.period() : 1) + 10; }

MixingTimeResult chain_mixing_time(const MapSequence& F, double epsilon, double delta, const Grid& grid,
                                   long confirm_horizon) {
  if (confirm_horizon < 0) throw ConfigurationError("confirm_horizon must be >= 0");
  if (epsilon >= 1.0) return {1, 0, confirm_horizon};
  if (!(epsilon > grid.spacing()))
    throw ConfigurationError("epsilon must exceed the grid spacing");
  if (!(delta > 0.0) || epsilon > delta)
    throw ConfigurationError("chain mixing time needs 0 < epsilon <= delta");

  const int n = grid.size();
  const int radius = static_cast<int>(std::floor(epsilon * n + 1e-9));
  const Saturation sat(step_rows(F, grid, grid.spacing() / 2.0, true), F.is_periodic(), radius, confirm_horizon,
                       50L * n);

  std::vector<long> m(static_cast<std::size_t>(n), -1);
  parallel_for(n, [&](int x) { m[static_cast<std::size_t>(x)] = sat.run(nodes_within(grid, grid.center(x), delta, false)); });

  const std::string limit = F.is_periodic() ? "" : " within the horizon";
  MixingTimeResult res{0, 0, confirm_horizon};
  for (int x = 0; x < n; ++x) {
    const long mx = m[static_cast<std::size_t>(x)];
    if (mx < 0)
      throw NotChainMixing("node " + std::to_string(x) + " (x = " + std::to_string(grid.center(x)) +
                               ") never saturates the grid" + limit,
                           x);
    if (mx > res.value) {
      res.value = mx;
      res.per_point_max_witness = x;
    }
  }
  return res;
}

bool grid_topologically_mixing(const MapSequence& F, double delta, const Grid& grid) {
  const int n = grid.size();
  const Saturation sat(step_rows(F, grid, grid.spacing(), false), F.is_periodic(), 0, default_confirm_horizon(F),
                       50L * n);
  for (int x = 0; x < n; ++x)
    if (sat.run(nodes_within(grid, grid.center(x), delta, false)) < 0) return false;
  return true;
}

RecurrenceReport recurrence_report(const MapSequence& F, double alpha, const Grid& grid) {
  RecurrenceReport rep;
  rep.alpha = alpha;
  rep.chain_recurrent_nodes = chain_recurrent_set(F, alpha, grid);
  if (F.is_periodic()) {
    rep.scc_count = lifted_scc_count(F, alpha, grid);
    rep.transitive = is_chain_transitive(F, alpha, grid);
  } else {
    const FiniteReach reach(F, alpha, grid);
    std::vector<int> cls(static_cast<std::size_t>(grid.size()), -1);
    for (int x = 0; x < grid.size(); ++x) {
      if (cls[static_cast<std::size_t>(x)] >= 0) continue;
      cls[static_cast<std::size_t>(x)] = rep.scc_count;
      for (int y = x + 1; y < grid.size(); ++y)
        if (cls[static_cast<std::size_t>(y)] < 0 && reach.reaches(x, y) && reach.reaches(y, x))
          cls[static_cast<std::size_t>(y)] = rep.scc_count;
      ++rep.scc_count;
    }
    rep.transitive = is_chain_transitive(F, alpha, grid);
  }
  return rep;
}

std::string encode_node_ranges(const std::vector<int>& nodes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size();) {
    std::size_t j = i;
    while (j + 1 < nodes.size() && nodes[j + 1] == nodes[j] + 1) ++j;
    if (i > 0) os << ',';
    os << nodes[i];
    if (j > i) os << '-' << nodes[j];
    i = j + 1;
  }
  return os.str();
}

std::vector<int> decode_node_ranges(const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    const auto dash = tok.find('-');
    const int a = std::stoi(tok.substr(0, dash));
    const int b = dash == std::string::npos ? a : std::stoi(tok.substr(dash + 1));
    for (int v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace nds
