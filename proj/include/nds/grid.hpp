#pragma once

#include <vector>

namespace nds {

/// Uniform grid of N cell centers p_i = (i + 0.5) / N on [0,1].
class Grid {
 public:
  explicit Grid(int size);

  int size() const { return size_; }
  double spacing() const { return 1.0 / size_; }
  double center(int i) const { return (i + 0.5) / size_; }
  std::vector<double> centers() const;

  /// Index of the nearest center, ties to the lower index.
  int nearest(double x) const;

 private:
  int size_;
};

}  // namespace nds
