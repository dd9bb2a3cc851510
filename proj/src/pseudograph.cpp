#include "nds/pseudograph.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "nds/errors.hpp"
#include "nds/recurrence.hpp"
#include "nds/tolerance.hpp"

namespace nds {

namespace {

// Counting is attempted in uint64 first; every routine reports overflow so
// the caller can redo the work with BigCount.
bool add_to(std::uint64_t& acc, std::uint64_t v) { return !__builtin_add_overflow(acc, v, &acc); }
bool add_to(BigCount& acc, const BigCount& v) {
  acc += v;
  return true;
}
bool mul_bound_ok(std::uint64_t mass, std::uint64_t factor) {
  std::uint64_t out;
  return !__builtin_mul_overflow(mass, factor, &out);
}
bool mul_bound_ok(const BigCount&, std::uint64_t) { return true; }
bool add_to(double& acc, double v) {
  acc += v;
  return true;
}
bool mul_bound_ok(double, std::uint64_t) { return true; }

using CoarseAdjacency = std::vector<std::vector<int>>;  // block -> successor blocks

CoarseAdjacency coarse_graph(const TransitionGraph& g, const std::vector<int>& block, int blocks) {
  std::vector<std::vector<char>> mark(static_cast<std::size_t>(blocks),
                                      std::vector<char>(static_cast<std::size_t>(blocks), 0));
  for (int i = 0; i < g.size(); ++i) {
    const auto& r = g.targets(i);
    const int b = block[static_cast<std::size_t>(i)];
    for (int c = block[static_cast<std::size_t>(r.lo)]; c <= block[static_cast<std::size_t>(r.hi)]; ++c)
      mark[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = 1;
  }
  CoarseAdjacency adj(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b)
    for (int c = 0; c < blocks; ++c)
      if (mark[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]) adj[static_cast<std::size_t>(b)].push_back(c);
  return adj;
}

template <class Count>
std::optional<Count> coarse_paths(const std::vector<CoarseAdjacency>& steps, int blocks) {
  std::vector<Count> cur(static_cast<std::size_t>(blocks), Count(1)), next;
  for (const auto& adj : steps) {
    next.assign(static_cast<std::size_t>(blocks), Count(0));
    for (int b = 0; b < blocks; ++b) {
      const Count& v = cur[static_cast<std::size_t>(b)];
      if (v == 0) continue;
      for (int c : adj[static_cast<std::size_t>(b)])
        if (!add_to(next[static_cast<std::size_t>(c)], v)) return std::nullopt;
    }
    cur.swap(next);
  }
  Count total(0);
  for (const auto& v : cur)
    if (!add_to(total, v)) return std::nullopt;
  return total;
}

// v <- v * A for a row-interval 0/1 matrix, via a difference array.
template <class Count>
bool propagate(const TransitionGraph& g, std::vector<Count>& v, std::vector<Count>& diff) {
  const auto n = static_cast<std::size_t>(g.size());
  diff.assign(n + 1, Count(0));
  Count mass(0);
  int max_degree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    if (!add_to(mass, v[i])) return false;
    max_degree = std::max(max_degree, g.targets(static_cast<int>(i)).size());
  }
  // Every entry of v * A is at most mass * max_degree.
  if (!mul_bound_ok(mass, static_cast<std::uint64_t>(max_degree))) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    const auto& r = g.targets(static_cast<int>(i));
    diff[static_cast<std::size_t>(r.lo)] += v[i];
    diff[static_cast<std::size_t>(r.hi) + 1] -= v[i];
  }
  Count run(0);
  for (std::size_t j = 0; j < n; ++j) {
    run += diff[j];
    v[j] = run;
  }
  return true;
}

template <class Count>
std::optional<std::vector<Count>> traces(const PathCountMatrix& pcm, long k_max) {
  const int n = pcm.steps.front().size();
  std::vector<Count> out(static_cast<std::size_t>(k_max), Count(0));
  std::vector<Count> v, diff;
  for (int start = 0; start < n; ++start) {
    v.assign(static_cast<std::size_t>(n), Count(0));
    v[static_cast<std::size_t>(start)] = 1;
    for (long k = 0; k < k_max; ++k) {
      for (const auto& g : pcm.steps)
        if (!propagate(g, v, diff)) return std::nullopt;
      if (!add_to(out[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(start)])) return std::nullopt;
    }
  }
  return out;
}

}  // namespace

BigCount count_pseudo_orbit_classes(const MapSequence& F, long n, double epsilon, double alpha,
                                    const Grid& grid) {
  if (n < 1) throw DomainError("count_pseudo_orbit_classes: n must be >= 1");
  if (!(epsilon >= 2.0 * grid.spacing()))
    throw ConfigurationError("epsilon must be at least twice the grid spacing");
  if (!(alpha > grid.spacing() / 2.0))
    throw ConfigurationError("alpha must exceed half the grid spacing");
  F.require_steps(1, n - 1);

  std::vector<int> block(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i)
    block[static_cast<std::size_t>(i)] = static_cast<int>(std::floor(grid.center(i) / epsilon));
  const int blocks = block.back() + 1;

  std::vector<CoarseAdjacency> steps;
  std::vector<CoarseAdjacency> by_phase;
  const long q = F.is_periodic() ? F.period() : 0;
  for (long k = 1; k <= n - 1; ++k) {
    if (q > 0 && k > q) {
      steps.push_back(by_phase[static_cast<std::size_t>((k - 1) % q)]);
      continue;
    }
    steps.push_back(coarse_graph(build_transition_graph(F, k, alpha, grid), block, blocks));
    if (q > 0) by_phase.push_back(steps.back());
  }
  if (auto fast = coarse_paths<std::uint64_t>(steps, blocks)) return BigCount(*fast);
  return *coarse_paths<BigCount>(steps, blocks);
}

long separated_pseudo_orbit_count(const MapSequence& F, long n, double epsilon, double alpha, const Grid& grid) {
  if (n < 1) throw DomainError("separated_pseudo_orbit_count: n must be >= 1");
  if (!(epsilon >= 2.0 * grid.spacing()))
    throw ConfigurationError("epsilon must be at least twice the grid spacing");
  if (!(alpha > grid.spacing() / 2.0))
    throw ConfigurationError("alpha must exceed half the grid spacing");
  F.require_steps(1, n - 1);

  const int size = grid.size();
  const auto len = static_cast<std::size_t>(n);
  std::vector<TransitionGraph> graphs;
  const long q = F.is_periodic() ? F.period() : 0;
  for (long k = 1; k <= n - 1; ++k) {
    if (q > 0 && k > q) graphs.push_back(graphs[static_cast<std::size_t>((k - 1) % q)]);
    else graphs.push_back(build_transition_graph(F, k, alpha, grid));
  }

  std::vector<double> paths(static_cast<std::size_t>(size), 1.0), diff;
  for (const auto& g : graphs) propagate(g, paths, diff);
  double total = 0.0;
  for (double v : paths) total += v;
  if (total > kMaxPseudoOrbitPaths)
    throw ConfigurationError("separated pseudo-orbit count: " + std::to_string(static_cast<long long>(total)) +
                             " paths exceed the budget; lower n or alpha");

  // Coordinates within eps of each other, in node units.
  const int reach = static_cast<int>(std::floor(epsilon * size + 1e-9));
  std::vector<int> kept;  // n nodes per kept path
  long count = 0;
  std::vector<std::vector<long>> compat(len);  // kept paths still within eps of the prefix
  std::vector<int> path(len), next(len);
  long window = 0;

  const auto keep = [&](std::size_t depth) {
    kept.insert(kept.end(), path.begin(), path.end());
    for (std::size_t k = 0; k < depth; ++k) compat[k].push_back(count);
    ++count;
  };

  for (int x0 = 0; x0 < size; ++x0) {
    while (window < count && kept[static_cast<std::size_t>(window) * len] < x0 - reach) ++window;
    compat[0].clear();
    for (long c = window; c < count; ++c) compat[0].push_back(c);
    path[0] = x0;
    if (len == 1) {
      if (compat[0].empty()) keep(0);
      continue;
    }
    std::size_t depth = 1;
    next[1] = graphs[0].targets(x0).lo;
    while (depth >= 1) {
      const auto& r = graphs[depth - 1].targets(path[depth - 1]);
      if (next[depth] > r.hi) {
        --depth;
        continue;
      }
      const int v = next[depth]++;
      path[depth] = v;
      auto& cur = compat[depth];
      cur.clear();
      for (long c : compat[depth - 1])
        if (std::abs(kept[static_cast<std::size_t>(c) * len + depth] - v) <= reach) cur.push_back(c);
      if (depth + 1 == len) {
        if (cur.empty()) keep(depth);
      } else {
        ++depth;
        next[depth] = graphs[depth - 1].targets(v).lo;
      }
    }
  }
  return count;
}

EntropyEstimate pseudo_entropy(const MapSequence& F, const PseudoParams& params) {
  params.bowen.validate();
  const Grid grid(params.bowen.grid_size);
  GrowthSeries series;
  for (long n = params.bowen.n_min; n <= params.bowen.n_max; ++n) {
    if (params.counting == PseudoCount::Blocks)
      series.push(n, count_pseudo_orbit_classes(F, n, params.bowen.epsilon, params.alpha, grid));
    else
      series.push(n, BigCount(separated_pseudo_orbit_count(F, n, params.bowen.epsilon, params.alpha, grid)));
  }
  return make_estimate(std::move(series), params.bowen);
}

std::vector<BigCount> closed_walk_traces(const PathCountMatrix& pcm, long k_max) {
  if (k_max < 1) return {};
  if (auto fast = traces<std::uint64_t>(pcm, k_max)) {
    std::vector<BigCount> out;
    for (auto v : *fast) out.emplace_back(v);
    return out;
  }
  return *traces<BigCount>(pcm, k_max);
}

BigCount count_periodic_pseudo_orbits(const MapSequence& F, long n, double alpha, const Grid& grid) {
  if (!F.is_periodic()) {
    if (n < 1 || n > *F.horizon())
      throw UnsupportedLength("length " + std::to_string(n) + " is outside the horizon " +
                              std::to_string(*F.horizon()));
    PathCountMatrix pcm;
    pcm.period = static_cast<int>(n);
    for (long k = 1; k <= n; ++k) pcm.steps.push_back(build_transition_graph(F, k, alpha, grid));
    return closed_walk_traces(pcm, 1).back();
  }
  const long q = F.period();
  if (n < 1 || n % q != 0)
    throw UnsupportedLength("length " + std::to_string(n) + " is not a positive multiple of the period " +
                            std::to_string(q));
  const auto pcm = build_path_count_matrix(F, alpha, grid);
  return closed_walk_traces(pcm, n / q).back();
}

SpectralRadius spectral_radius(const PathCountMatrix& pcm, double tolerance, long max_iterations) {
  const int n = pcm.steps.front().size();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd w(n), diff(n + 1);
  double lambda = 0.0;
  for (long it = 1; it <= max_iterations; ++it) {
    w = v;
    for (const auto& g : pcm.steps) {
      diff.setZero();
      for (int i = 0; i < n; ++i) {
        const auto& r = g.targets(i);
        diff(r.lo) += w(i);
        diff(r.hi + 1) -= w(i);
      }
      double run = 0.0;
      for (int j = 0; j < n; ++j) {
        run += diff(j);
        w(j) = run;
      }
    }
    w += v;  // shift by the identity
    const double next = w.sum();  // v sums to 1
    v = w / next;
    if (it > 1 && std::abs(next - lambda) <= tolerance * next) return {next - 1.0, it};
    lambda = next;
  }
  throw NumericError("power iteration did not converge after " + std::to_string(max_iterations) + " iterations",
                     max_iterations);
}

PeriodicEntropyResult periodic_pseudo_entropy(const MapSequence& F, double alpha, const Grid& grid,
                                              long n_min, long n_max) {
  if (!F.is_periodic()) throw ConfigurationError("periodic-pseudo-entropy needs a periodic sequence");
  if (n_min < 1 || n_max < n_min) throw ConfigurationError("invalid trace window");
  const long q = F.period();
  const auto pcm = build_path_count_matrix(F, alpha, grid);

  PeriodicEntropyResult out;
  const SpectralRadius rho = spectral_radius(pcm);
  out.spectral_radius = rho.value;
  out.iterations = rho.iterations;

  const long k_max = n_max / q;
  const auto tr = closed_walk_traces(pcm, k_max);
  GrowthSeries series;
  for (long k = 1; k <= k_max; ++k) {
    const long n = k * q;
    if (n < n_min) continue;
    const auto& t = tr[static_cast<std::size_t>(k - 1)];
    if (t > 0) series.push(n, t);
  }
  out.trace_regression = std::max(0.0, fit_growth_rate(series).slope);

  BowenParams params;
  params.epsilon = grid.spacing();
  params.n_min = n_min;
  params.n_max = n_max;
  params.grid_size = grid.size();
  out.estimate.value = rho.value > 1.0 ? std::log(rho.value) / static_cast<double>(q) : 0.0;
  out.estimate.slope_stderr = fit_growth_rate(series).stderr_;
  out.estimate.series = std::move(series);
  out.estimate.params = params;

  out.chain_transitive = is_chain_transitive(F, alpha, grid);
  if (!out.chain_transitive)
    out.warnings.push_back("system is not chain transitive at this alpha; periodic-pseudo-entropy may undercount");
  if (std::abs(out.trace_regression - out.estimate.value) > 0.05)
    out.warnings.push_back("trace regression and spectral value differ by more than 0.05");
  return out;
}

void check_pseudo_orbit(const MapSequence& F, const PseudoOrbit& pseudo, const Grid& grid) {
  for (std::size_t k = 0; k + 1 < pseudo.nodes.size(); ++k) {
    const double y = F.map_at(pseudo.start_step + static_cast<long>(k))(grid.center(pseudo.nodes[k]));
    if (!strictly_less(std::abs(y - grid.center(pseudo.nodes[k + 1])), pseudo.alpha))
      throw ConfigurationError("pseudo-orbit breaks the alpha bound at position " + std::to_string(k));
  }
}

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

struct Interval {
  Float50 lo, hi;  // open
};

// Intervals of [0,1] mapped by f into the union `target`, intersected with
// the window (lo, hi).
std::vector<Interval> pull_back(const PiecewiseLinearMap& f, const std::vector<Interval>& target,
                                const Float50& win_lo, const Float50& win_hi) {
  std::vector<Interval> out;
  const auto bp = f.breakpoints();
  const auto v = f.values();
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const Float50 b0(bp[k]), b1(bp[k + 1]);
    const Float50 lo = std::max(b0, win_lo), hi = std::min(b1, win_hi);
    if (!(lo < hi)) continue;
    const Float50 v0(v[k]), v1(v[k + 1]);
    const Float50 slope = (v1 - v0) / (b1 - b0);
    for (const auto& t : target) {
      Float50 a, b;
      if (slope == 0) {
        if (!(v0 > t.lo && v0 < t.hi)) continue;
        a = lo;
        b = hi;
      } else {
        Float50 xa = b0 + (t.lo - v0) / slope;
        Float50 xb = b0 + (t.hi - v0) / slope;
        if (xa > xb) std::swap(xa, xb);
        a = std::max(xa, lo);
        b = std::min(xb, hi);
      }
      if (a < b) out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (auto& iv : out) {
    if (!merged.empty() && !(iv.lo > merged.back().hi))
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

}  // namespace

std::optional<ShadowTrace> shadowing_trace(const MapSequence& F, long start_step, std::span<const double> points,
                                           double epsilon) {
  if (points.empty()) throw ConfigurationError("shadowing_trace: empty pseudo-orbit");
  if (!(epsilon > 0.0)) throw ConfigurationError("shadowing_trace: epsilon must be > 0");
  const long len = static_cast<long>(points.size());
  F.require_steps(start_step, start_step + len - 2);

  const Float50 eps(epsilon), zero(0), one(1);
  const auto window = [&](long k) {
    const Float50 x(points[static_cast<std::size_t>(k)]);
    return std::pair{std::max(zero, x - eps), std::min(one, x + eps)};
  };

  auto [lo, hi] = window(len - 1);
  std::vector<Interval> tube{{lo, hi}};
  if (!(lo < hi)) return std::nullopt;
  for (long k = len - 2; k >= 0; --k) {
    auto [wlo, whi] = window(k);
    tube = pull_back(F.map_at(start_step + k), tube, wlo, whi);
    if (tube.empty()) return std::nullopt;
  }

  const auto widest = std::max_element(tube.begin(), tube.end(), [](const Interval& a, const Interval& b) {
    return (a.hi - a.lo) < (b.hi - b.lo);
  });
  Float50 y = (widest->lo + widest->hi) / 2;

  ShadowTrace trace;
  trace.point = y.convert_to<double>();
  std::ostringstream os;
  os.precision(40);
  os << y;
  trace.point_exact = os.str();
  Float50 dev(0);
  for (long k = 0; k < len; ++k) {
    if (k > 0) y = eval_map_as(F.map_at(start_step + k - 1), y);
    dev = std::max(dev, Float50(abs(y - Float50(points[static_cast<std::size_t>(k)]))));
  }
  trace.max_deviation = dev.convert_to<double>();
  return trace;
}

std::optional<ShadowTrace> shadowing_trace(const MapSequence& F, const PseudoOrbit& pseudo, double epsilon,
                                           const Grid& grid) {
  check_pseudo_orbit(F, pseudo, grid);
  std::vector<double> pts;
  pts.reserve(pseudo.nodes.size());
  for (int j : pseudo.nodes) pts.push_back(grid.center(j));
  return shadowing_trace(F, pseudo.start_step, pts, epsilon);
}

}  // namespace nds
