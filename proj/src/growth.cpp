#include "nds/growth.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "nds/errors.hpp"

namespace nds {

double log_count(const BigCount& c) {
  if (c <= 0) throw DomainError("log_count: count must be positive");
  const unsigned bits = boost::multiprecision::msb(c);
  if (bits < 1000) return std::log(c.convert_to<double>());
  const unsigned shift = bits - 60;
  const BigCount top = c >> shift;
  return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

void GrowthSeries::push(long n, BigCount count) {
  if (!entries_.empty() && n <= entries_.back().n)
    throw ConfigurationError("growth series: n must be strictly increasing");
  if (count < 1) throw ConfigurationError("growth series: counts must be >= 1");
  entries_.push_back({n, std::move(count)});
}

void GrowthSeries::write_csv(std::ostream& os) const {
  os << "n,count,log_count\n";
  char buf[64];
  for (const auto& e : entries_) {
    std::snprintf(buf, sizeof buf, "%.17g", log_count(e.count));
    os << e.n << ',' << e.count << ',' << buf << '\n';
  }
}

namespace {

struct LineFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double sigma = 0.0;  // residual standard error
  Eigen::VectorXd residuals;
};

LineFit least_squares(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd A(m, 2);
  A.col(0) = x;
  A.col(1).setOnes();
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  LineFit fit;
  fit.slope = coef(0);
  fit.residuals = y - A * coef;
  if (m > 2) {
    const double ssr = fit.residuals.squaredNorm();
    fit.sigma = std::sqrt(ssr / static_cast<double>(m - 2));
    const double sxx = (x.array() - x.mean()).square().sum();
    fit.stderr_ = sxx > 0.0 ? fit.sigma / std::sqrt(sxx) : 0.0;
  }
  return fit;
}

}  // namespace

GrowthFit fit_growth_rate(const GrowthSeries& series) {
  const auto& e = series.entries();
  if (e.size() < 2) return {};
  bool constant = true;
  for (const auto& entry : e) constant = constant && entry.count == e.front().count;
  if (constant) return {};

  const auto m = static_cast<Eigen::Index>(e.size());
  Eigen::VectorXd x(m), y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    x(i) = static_cast<double>(e[static_cast<std::size_t>(i)].n);
    y(i) = log_count(e[static_cast<std::size_t>(i)].count);
  }
  LineFit fit = least_squares(x, y);
  GrowthFit out{fit.slope, fit.stderr_, 0};
  if (m > 3 && fit.stderr_ > 0.0 && std::abs(fit.residuals(0)) > 3.0 * fit.stderr_) {
    fit = least_squares(x.tail(m - 1), y.tail(m - 1));
    out = {fit.slope, fit.stderr_, 1};
  }
  return out;
}

void BowenParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigurationError("epsilon must lie in (0,1)");
  if (n_min < 1) throw ConfigurationError("n_min must be >= 1");
  if (n_max - n_min < 4)
    throw ConfigurationError("window [" + std::to_string(n_min) + "," + std::to_string(n_max) +
                             "] too short: need n_max - n_min >= 4");
  if (grid_size < 2) throw ConfigurationError("grid_size must be >= 2");
}

double EntropyEstimate::value_bits() const { return value / std::numbers::ln2; }

EntropyEstimate make_estimate(GrowthSeries series, const BowenParams& params) {
  const GrowthFit fit = fit_growth_rate(series);
  EntropyEstimate est;
  est.value = std::max(0.0, fit.slope);
  est.slope_stderr = fit.stderr_;
  est.series = std::move(series);
  est.params = params;
  return est;
}

}  // namespace nds
