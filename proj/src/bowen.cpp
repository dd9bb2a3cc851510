#include "nds/bowen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>

#include "nds/errors.hpp"
#include "nds/systems.hpp"
#include "nds/tolerance.hpp"

namespace nds {

double bowen_distance(const MapSequence& F, double x, double y, long n) {
  if (n < 1) throw DomainError("bowen_distance: n must be >= 1");
  F.require_steps(1, n - 1);
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw DomainError("bowen_distance: points outside [0,1]");
  double d = std::abs(x - y);
  for (long j = 1; j < n; ++j) {
    const auto& f = F.map_at(j);
    x = f(x);
    y = f(y);
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

namespace {

// Row-major table of orbit coordinates: row i holds F_{[1,j]}(x_i), j < width.
class OrbitTable {
 public:
  OrbitTable(const MapSequence& F, std::span<const double> xs, long width)
      : width_(static_cast<std::size_t>(width)), data_(xs.size() * width_) {
    F.require_steps(1, width - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double x = xs[i];
      data_[i * width_] = x;
      for (std::size_t j = 1; j < width_; ++j) {
        x = F.map_at(static_cast<long>(j))(x);
        data_[i * width_ + j] = x;
      }
    }
  }

  double distance(std::size_t a, std::size_t b, long n) const {
    const double* pa = &data_[a * width_];
    const double* pb = &data_[b * width_];
    double d = 0.0;
    for (long j = 0; j < n; ++j) d = std::max(d, std::abs(pa[j] - pb[j]));
    return d;
  }

 private:
  std::size_t width_;
  std::vector<double> data_;
};

void check_candidates(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 0.0 && xs[i] <= 1.0)) throw DomainError("candidate point outside [0,1]");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw ConfigurationError("candidates must be strictly ascending");
  }
}

void check_spacing(const Grid& grid, double epsilon) {
  if (!(grid.spacing() < epsilon / 4.0))
    throw ConfigurationError("grid spacing " + std::to_string(grid.spacing()) +
                             " must be < epsilon/4 = " + std::to_string(epsilon / 4.0));
}

PointSet greedy_separated(const OrbitTable& table, std::span<const double> xs, long n, double eps) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool ok = true;
    // d_n >= |x - y|, so only chosen points within eps in the base
    // coordinate can conflict.
    for (auto it = chosen.rbegin(); it != chosen.rend() && less_or_equal(xs[i] - xs[*it], eps); ++it) {
      if (!strictly_greater(table.distance(i, *it, n), eps)) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(i);
  }
  PointSet out;
  out.count = static_cast<long>(chosen.size());
  for (auto i : chosen) out.witness.push_back(xs[i]);
  return out;
}

// Maximum clique of the "separated" relation by branch and bound over
// bitmasks. Include-first ascending recursion returns the lexicographically
// smallest optimum.
class ExactSeparated {
 public:
  ExactSeparated(const OrbitTable& table, std::size_t m, long n, double eps) : compat_(m, 0) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && strictly_greater(table.distance(a, b, n), eps)) compat_[a] |= std::uint32_t{1} << b;
  }

  std::uint32_t solve() {
    const auto m = compat_.size();
    const std::uint32_t all = m == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
    recurse(all, 0);
    return best_;
  }

 private:
  void recurse(std::uint32_t cand, std::uint32_t chosen) {
    const int have = std::popcount(chosen);
    if (cand == 0) {
      if (have > best_size_) {
        best_size_ = have;
        best_ = chosen;
      }
      return;
    }
    if (have + std::popcount(cand) <= best_size_) return;
    const int v = std::countr_zero(cand);
    const std::uint32_t bit = std::uint32_t{1} << v;
    recurse(cand & compat_[static_cast<std::size_t>(v)], chosen | bit);
    recurse(cand & ~bit, chosen);
  }

  std::vector<std::uint32_t> compat_;
  std::uint32_t best_ = 0;
  int best_size_ = -1;
};

PointSet separated_from_table(const OrbitTable& table, std::span<const double> xs, long n, double eps) {
  if (xs.empty()) return {};
  if (xs.size() > kExactSeparatedLimit) return greedy_separated(table, xs, n, eps);
  const std::uint32_t mask = ExactSeparated(table, xs.size(), n, eps).solve();
  PointSet out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (mask & (std::uint32_t{1} << i)) out.witness.push_back(xs[i]);
  out.count = static_cast<long>(out.witness.size());
  return out;
}

}  // namespace

PointSet max_separated_count(const MapSequence& F, long n, double epsilon, std::span<const double> candidates) {
  if (n < 1) throw DomainError("max_separated_count: n must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigurationError("epsilon must be > 0");
  check_candidates(candidates);
  const OrbitTable table(F, candidates, n);
  return separated_from_table(table, candidates, n, epsilon);
}

PointSet max_separated_count(const MapSequence& F, long n, double epsilon, const Grid& grid) {
  check_spacing(grid, epsilon);
  const auto xs = grid.centers();
  return max_separated_count(F, n, epsilon, xs);
}

PointSet min_spanning_count(const MapSequence& F, long n, double epsilon, const Grid& grid) {
  if (n < 1) throw DomainError("min_spanning_count: n must be >= 1");
  check_spacing(grid, epsilon);
  const auto xs = grid.centers();
  const OrbitTable table(F, xs, n);
  const auto m = xs.size();

  std::vector<std::vector<std::uint32_t>> covers(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j-- > 0 && less_or_equal(xs[i] - xs[j], epsilon);)
      if (less_or_equal(table.distance(i, j, n), epsilon)) covers[i].push_back(static_cast<std::uint32_t>(j));
    covers[i].push_back(static_cast<std::uint32_t>(i));
    for (std::size_t j = i + 1; j < m && less_or_equal(xs[j] - xs[i], epsilon); ++j)
      if (less_or_equal(table.distance(i, j, n), epsilon)) covers[i].push_back(static_cast<std::uint32_t>(j));
  }

  // Lazy greedy: gains only shrink, so a popped entry whose recomputed gain
  // is unchanged is a true maximum. Heap order (gain desc, index asc).
  using Entry = std::pair<long, long>;  // (gain, -index)
  std::priority_queue<Entry> heap;
  for (std::size_t i = 0; i < m; ++i) heap.emplace(static_cast<long>(covers[i].size()), -static_cast<long>(i));
  std::vector<char> covered(m, 0);
  std::size_t remaining = m;
  std::vector<std::size_t> chosen;
  while (remaining > 0) {
    auto [gain, neg] = heap.top();
    heap.pop();
    const auto i = static_cast<std::size_t>(-neg);
    long now = 0;
    for (auto j : covers[i]) now += covered[j] ? 0 : 1;
    if (now != gain) {
      heap.emplace(now, neg);
      continue;
    }
    chosen.push_back(i);
    for (auto j : covers[i]) {
      if (!covered[j]) {
        covered[j] = 1;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  PointSet out;
  out.count = static_cast<long>(chosen.size());
  for (auto i : chosen) out.witness.push_back(xs[i]);
  return out;
}

EntropyEstimate entropy_estimate(const MapSequence& F, const BowenParams& params,
                                 std::span<const double> candidates) {
  params.validate();
  check_candidates(candidates);
  GrowthSeries series;
  if (candidates.empty()) return make_estimate(std::move(series), params);
  const OrbitTable table(F, candidates, params.n_max);
  for (long n = params.n_min; n <= params.n_max; ++n)
    series.push(n, separated_from_table(table, candidates, n, params.epsilon).count);
  return make_estimate(std::move(series), params);
}

EntropyEstimate entropy_estimate(const MapSequence& F, const BowenParams& params) {
  params.validate();
  const Grid grid(params.grid_size);
  check_spacing(grid, params.epsilon);
  const auto xs = grid.centers();
  return entropy_estimate(F, params, xs);
}

}  // namespace nds
