#include "nds/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nds/errors.hpp"

namespace nds {

Grid::Grid(int size) : size_(size) {
  if (size < 2) throw ConfigurationError("grid size must be >= 2");
}

std::vector<double> Grid::centers() const {
  std::vector<double> out(static_cast<std::size_t>(size_));
  for (int i = 0; i < size_; ++i) out[static_cast<std::size_t>(i)] = center(i);
  return out;
}

int Grid::nearest(double x) const {
  const double u = x * size_ - 0.5;
  int i = static_cast<int>(std::ceil(u - 0.5));
  return std::clamp(i, 0, size_ - 1);
}

}  // namespace nds
