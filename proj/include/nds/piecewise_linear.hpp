#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nds {

/// Continuous piecewise-linear self-map of [0,1], given by its values at an
/// ascending list of breakpoints that starts at 0 and ends at 1.
class PiecewiseLinearMap {
 public:
  /// Throws ValidationError naming the violated invariant.
  PiecewiseLinearMap(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseLinearMap identity();

  /// Throws DomainError for x outside [0,1].
  double operator()(double x) const;

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }

  std::size_t piece_count() const { return breakpoints_.size() - 1; }
  double slope(std::size_t piece) const { return slopes_[piece]; }
  double max_abs_slope() const;

  /// Index of the linear piece containing x (the right-closed last piece
  /// owns x = 1).
  std::size_t piece_index(double x) const;

  bool operator==(const PiecewiseLinearMap& other) const {
    return breakpoints_ == other.breakpoints_ && values_ == other.values_;
  }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

inline double eval_map(const PiecewiseLinearMap& m, double x) { return m(x); }

}  // namespace nds

namespace nds {

/// Evaluation in an arbitrary scalar type (e.g. a multiprecision float or
/// rational). Breakpoints and values convert exactly from double.
template <class Real>
Real eval_map_as(const PiecewiseLinearMap& m, const Real& x) {
  const auto bp = m.breakpoints();
  const auto v = m.values();
  std::size_t k = 0;
  while (k + 2 < bp.size() && !(x < Real(bp[k + 1]))) ++k;
  const Real b0(bp[k]), b1(bp[k + 1]), v0(v[k]), v1(v[k + 1]);
  return v0 + (x - b0) * (v1 - v0) / (b1 - b0);
}

}  // namespace nds
