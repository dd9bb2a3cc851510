#include "nds/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "nds/errors.hpp"
#include "nds/recurrence.hpp"
#include "nds/systems.hpp"

namespace nds {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::MixingTimeLB:
      return "MixingTimeLB";
    case BoundKind::EntropyLB:
      return "EntropyLB";
    case BoundKind::FixGrowth:
      return "FixGrowth";
  }
  return "?";
}

double mixing_time_lower_bound(double c, double D, double delta, double epsilon) {
  if (!(c >= 1.0)) throw DomainError("mixing_time_lower_bound: need c >= 1");
  if (!(D > 0.0) || !(epsilon > 0.0) || epsilon > delta || delta > D / 2.0)
    throw DomainError("mixing_time_lower_bound: need 0 < epsilon <= delta <= D/2");
  if (c == 1.0) return (D - 2.0 * delta) / (2.0 * epsilon);
  const double num = D * (c - 1.0) + 2.0 * epsilon;
  const double den = 2.0 * delta * (c - 1.0) + 2.0 * epsilon;
  return std::log(num / den) / std::log(c);
}

double box_dimension(std::span<const double> points, std::span<const double> scales) {
  if (points.empty()) throw ConfigurationError("box_dimension: empty point set");
  if (scales.size() < 2) throw ConfigurationError("box_dimension: need at least two scales");
  for (double s : scales)
    if (!(s > 0.0 && s < 1.0)) throw ConfigurationError("box_dimension: scales must lie in (0,1)");
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  if (*lo == *hi) return 0.0;

  Eigen::MatrixXd A(static_cast<Eigen::Index>(scales.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(scales.size()));
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double s = scales[i];
    const auto last = static_cast<long>(std::ceil(1.0 / s)) - 1;
    std::set<long> boxes;
    for (double p : points) boxes.insert(std::min(static_cast<long>(std::floor(p / s)), last));
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = 1.0;
    A(r, 1) = std::log(1.0 / s);
    b(r) = std::log(static_cast<double>(boxes.size()));
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  return std::max(0.0, coef(1));
}

BoundReport entropy_lower_bound(const MapSequence& F, std::span<const double> delta_list, double epsilon,
                                const Grid& grid) {
  if (delta_list.empty()) throw ConfigurationError("entropy_lower_bound: empty delta list");
  BoundReport rep;
  rep.kind = BoundKind::EntropyLB;
  rep.inputs["epsilon"] = epsilon;
  rep.inputs["grid_size"] = grid.size();

  const std::vector<double> scales{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  const auto centres = grid.centers();
  const double d_prime = box_dimension(centres, scales);
  rep.inputs["d_prime"] = d_prime;

  const double smallest = *std::min_element(delta_list.begin(), delta_list.end());
  if (!grid_topologically_mixing(F, smallest, grid))
    throw NotChainMixing("entropy_lower_bound: system fails the grid mixing test", 0);

  const long confirm = default_confirm_horizon(F);
  double best = 0.0;
  for (double delta : delta_list) {
    const auto m = chain_mixing_time(F, epsilon, delta, grid, confirm);
    rep.inputs["m(" + std::to_string(delta) + ")"] = static_cast<double>(m.value);
    if (m.value > 0) best = std::max(best, std::log(1.0 / delta) / static_cast<double>(m.value));
  }
  rep.value = d_prime * best;
  return rep;
}

EntropyEstimate fix_growth_entropy(const MapSequence& F, std::span<const long> n_list) {
  if (!F.is_periodic()) throw ConfigurationError("fix_growth_entropy: periodic sequences only");
  if (n_list.size() < 2) throw ConfigurationError("fix_growth_entropy: need at least two lengths");
  const long q = F.period();
  GrowthSeries series;
  for (long n : n_list) {
    if (n < 1 || n % q != 0) throw UnsupportedLength("fix_growth_entropy: n must be a positive multiple of q");
    const long count = fixed_point_count(F, n);
    if (count > 0) series.push(n, BigCount(count));
  }
  BowenParams params;
  params.epsilon = 0.0;
  params.n_min = n_list.front();
  params.n_max = n_list.back();
  params.grid_size = 0;
  return make_estimate(std::move(series), params);
}

}  // namespace nds
