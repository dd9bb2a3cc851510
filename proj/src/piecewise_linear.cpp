#include "nds/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nds/errors.hpp"
#include "nds/tolerance.hpp"

namespace nds {

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw ValidationError("breakpoints: need at least two entries");
  if (breakpoints_.size() != values_.size())
    throw ValidationError("values: length " + std::to_string(values_.size()) +
                          " does not match breakpoints length " +
                          std::to_string(breakpoints_.size()));
  if (breakpoints_.front() != 0.0)
    throw ValidationError("breakpoints: first breakpoint must be 0");
  if (breakpoints_.back() != 1.0)
    throw ValidationError("breakpoints: last breakpoint must be 1");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw ValidationError("breakpoints: not strictly increasing at index " + std::to_string(i));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0 || values_[i] > 1.0)
      throw ValidationError("values: entry " + std::to_string(i) + " outside [0,1]");
  }
  slopes_.resize(piece_count());
  for (std::size_t k = 0; k < piece_count(); ++k)
    slopes_[k] = (values_[k + 1] - values_[k]) / (breakpoints_[k + 1] - breakpoints_[k]);
}

PiecewiseLinearMap PiecewiseLinearMap::identity() { return {{0.0, 1.0}, {0.0, 1.0}}; }

std::size_t PiecewiseLinearMap::piece_index(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (k == 0) return 0;
  return std::min(k - 1, piece_count() - 1);
}

double PiecewiseLinearMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("eval_map: x = " + std::to_string(x) + " outside [0,1]");
  const std::size_t k = piece_index(x);
  const double y = values_[k] + (x - breakpoints_[k]) * slopes_[k];
  // absorb round-off only
  return std::clamp(y, 0.0, 1.0);
}

double PiecewiseLinearMap::max_abs_slope() const {
  double c = 0.0;
  for (double s : slopes_) c = std::max(c, std::abs(s));
  return c;
}

}  // namespace nds
