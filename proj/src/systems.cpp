#include "nds/systems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nds/errors.hpp"
#include "nds/tolerance.hpp"

namespace nds {

double compose_orbit(const MapSequence& F, long i, long n, double x) {
  if (n < 0) throw DomainError("compose_orbit: negative length");
  F.require_steps(i, i + n - 1);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("compose_orbit: x outside [0,1]");
  for (long k = 0; k < n; ++k) x = F.map_at(i + k)(x);
  return x;
}

OrbitSegment orbit_segment(const MapSequence& F, long i, long n, double x) {
  F.require_steps(i, i + n - 1);
  OrbitSegment seg{i, {}};
  seg.points.reserve(static_cast<std::size_t>(n + 1));
  seg.points.push_back(x);
  for (long k = 0; k < n; ++k) {
    x = F.map_at(i + k)(x);
    seg.points.push_back(x);
  }
  return seg;
}

double lipschitz_constant(const MapSequence& F) {
  double c = 0.0;
  for (const auto& m : F.maps()) c = std::max(c, m.max_abs_slope());
  return c;
}

namespace {

// outer o inner, both on [0,1].
PiecewiseLinearMap compose_pair(const PiecewiseLinearMap& outer, const PiecewiseLinearMap& inner) {
  const auto xb = inner.breakpoints();
  const auto yv = inner.values();
  const auto ob = outer.breakpoints();
  const auto ov = outer.values();

  std::vector<double> bp, val;
  bp.reserve(xb.size() * 2);
  val.reserve(xb.size() * 2);
  bp.push_back(xb[0]);
  val.push_back(outer(yv[0]));

  for (std::size_t k = 0; k + 1 < xb.size(); ++k) {
    const double x0 = xb[k], x1 = xb[k + 1];
    const double y0 = yv[k], y1 = yv[k + 1];
    if (y0 != y1) {
      const double lo = std::min(y0, y1), hi = std::max(y0, y1);
      // interior breakpoints of `outer` hit by this piece, in x order
      auto first = std::upper_bound(ob.begin() + 1, ob.end() - 1, lo + kSnap);
      auto last = std::lower_bound(ob.begin() + 1, ob.end() - 1, hi - kSnap);
      const auto emit = [&](std::size_t idx) {
        const double b = ob[idx];
        const double x = x0 + (b - y0) * (x1 - x0) / (y1 - y0);
        if (x > bp.back() && x < x1) {
          bp.push_back(x);
          val.push_back(ov[idx]);
        }
      };
      const auto begin_idx = static_cast<std::size_t>(first - ob.begin());
      const auto end_idx = static_cast<std::size_t>(last - ob.begin());
      if (y1 > y0) {
        for (std::size_t idx = begin_idx; idx < end_idx; ++idx) emit(idx);
      } else {
        for (std::size_t idx = end_idx; idx > begin_idx; --idx) emit(idx - 1);
      }
    }
    bp.push_back(x1);
    val.push_back(outer(y1));
  }
  return PiecewiseLinearMap(std::move(bp), std::move(val));
}

}  // namespace

PiecewiseLinearMap compose_maps(const MapSequence& F, long i, long n) {
  if (n < 0) throw DomainError("compose_maps: negative length");
  F.require_steps(i, i + n - 1);
  PiecewiseLinearMap acc = PiecewiseLinearMap::identity();
  for (long k = 0; k < n; ++k) acc = compose_pair(F.map_at(i + k), acc);
  return acc;
}

long fixed_point_count(const MapSequence& F, long n) {
  if (n < 1) throw DomainError("fixed_point_count: n must be >= 1");
  const PiecewiseLinearMap comp = compose_maps(F, 1, n);
  const auto xb = comp.breakpoints();
  const auto yv = comp.values();

  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < xb.size(); ++k) {
    const double g0 = yv[k] - xb[k];
    const double g1 = yv[k + 1] - xb[k + 1];
    const bool z0 = std::abs(g0) <= kSnap, z1 = std::abs(g1) <= kSnap;
    if (z0 && z1)
      throw NonIsolatedFixedPoints("F_[1," + std::to_string(n) + "] coincides with the diagonal on [" +
                                   std::to_string(xb[k]) + ", " + std::to_string(xb[k + 1]) + "]");
    if (z0) roots.push_back(xb[k]);
    if (z1) roots.push_back(xb[k + 1]);
    if (!z0 && !z1 && ((g0 < 0.0) != (g1 < 0.0)))
      roots.push_back(xb[k] + g0 * (xb[k + 1] - xb[k]) / (g0 - g1));
  }
  std::sort(roots.begin(), roots.end());
  long count = 0;
  double prev = -1.0;
  for (double r : roots) {
    if (count == 0 || r - prev > kSnap) ++count;
    prev = r;
  }
  return count;
}

long lap_count(const PiecewiseLinearMap& m) {
  long laps = 1;
  int sign = 0;
  for (std::size_t k = 0; k < m.piece_count(); ++k) {
    const double s = m.slope(k);
    const int sk = s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
    if (sk == 0) continue;
    if (sign != 0 && sk != sign) ++laps;
    sign = sk;
  }
  return laps;
}

long lap_count(const MapSequence& F, long n) {
  if (n < 1) throw DomainError("lap_count: n must be >= 1");
  return lap_count(compose_maps(F, 1, n));
}

}  // namespace nds
