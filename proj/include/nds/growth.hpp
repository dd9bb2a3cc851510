#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <vector>

namespace nds {

using BigCount = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, accurate for values far beyond
/// the range of double.
double log_count(const BigCount& c);

struct GrowthEntry {
  long n = 0;
  BigCount count;
};

/// (n, count) pairs with n strictly increasing and count >= 1.
class GrowthSeries {
 public:
  GrowthSeries() = default;
  /// Throws ConfigurationError when the ordering or positivity invariant fails.
  void push(long n, BigCount count);
  const std::vector<GrowthEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// CSV with header `n,count,log_count`.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<GrowthEntry> entries_;
};

struct GrowthFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  /// 1 when the smallest n was discarded as a transient.
  int dropped = 0;
};

/// Least-squares slope of log count against n. If the smallest-n residual
/// exceeds three times the slope standard error it is dropped and the fit redone
/// once. Series with fewer than two entries, or constant counts, fit to 0.
GrowthFit fit_growth_rate(const GrowthSeries& series);

struct BowenParams {
  double epsilon = 0.02;
  long n_min = 4;
  long n_max = 12;
  int grid_size = 4000;

  /// Throws ConfigurationError naming the broken invariant.
  void validate() const;
};

struct EntropyEstimate {
  double value = 0.0;  // nats
  double slope_stderr = 0.0;
  GrowthSeries series;
  BowenParams params;

  double value_bits() const;
};

/// value = max(0, fitted slope).
EntropyEstimate make_estimate(GrowthSeries series, const BowenParams& params);

}  // namespace nds
