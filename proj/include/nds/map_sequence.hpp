#pragma once

#include <optional>
#include <vector>

#include "nds/piecewise_linear.hpp"

namespace nds {

/// A non-autonomous system F = {f_i}, i >= 1: either a periodic repetition
/// of a finite list of maps or a finite-horizon sequence.
class MapSequence {
 public:
  enum class Kind { Periodic, Finite };

  static MapSequence periodic(std::vector<PiecewiseLinearMap> maps);
  /// `maps` must hold at least `horizon` entries.
  static MapSequence finite(std::vector<PiecewiseLinearMap> maps, long horizon);

  Kind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == Kind::Periodic; }

  /// Period q for periodic sequences; ConfigurationError for finite ones.
  int period() const;
  /// Declared horizon for finite sequences, nullopt when periodic.
  std::optional<long> horizon() const { return horizon_; }

  /// f_i, 1-based. IndexError past the horizon or for i < 1.
  const PiecewiseLinearMap& map_at(long i) const;

  /// Throws IndexError unless f_first .. f_last all exist.
  void require_steps(long first, long last) const;

  const std::vector<PiecewiseLinearMap>& maps() const { return maps_; }

  bool operator==(const MapSequence& other) const {
    return kind_ == other.kind_ && maps_ == other.maps_ && horizon_ == other.horizon_;
  }

 private:
  MapSequence(Kind kind, std::vector<PiecewiseLinearMap> maps, std::optional<long> horizon)
      : kind_(kind), maps_(std::move(maps)), horizon_(horizon) {}

  Kind kind_;
  std::vector<PiecewiseLinearMap> maps_;
  std::optional<long> horizon_;
};

/// Trajectory piece (F_{[s,0]}(x), F_{[s,1]}(x), ...) with s = start_index.
struct OrbitSegment {
  long start_index = 1;
  std::vector<double> points;
};

}  // namespace nds
