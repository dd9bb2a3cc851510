#include "nds/map_sequence.hpp"

#include <string>

#include "nds/errors.hpp"

namespace nds {

MapSequence MapSequence::periodic(std::vector<PiecewiseLinearMap> maps) {
  if (maps.empty()) throw ValidationError("maps: periodic sequence needs at least one map");
  return MapSequence(Kind::Periodic, std::move(maps), std::nullopt);
}

MapSequence MapSequence::finite(std::vector<PiecewiseLinearMap> maps, long horizon) {
  if (maps.empty()) throw ValidationError("maps: finite sequence needs at least one map");
  if (horizon < 1) throw ValidationError("horizon: must be positive");
  if (static_cast<long>(maps.size()) < horizon)
    throw ValidationError("horizon: " + std::to_string(horizon) + " exceeds the " +
                          std::to_string(maps.size()) + " supplied maps");
  maps.resize(static_cast<std::size_t>(horizon), maps.front());
  return MapSequence(Kind::Finite, std::move(maps), horizon);
}

int MapSequence::period() const {
  if (kind_ != Kind::Periodic)
    throw ConfigurationError("period: finite-horizon sequence has no period");
  return static_cast<int>(maps_.size());
}

const PiecewiseLinearMap& MapSequence::map_at(long i) const {
  if (i < 1) throw IndexError("map index " + std::to_string(i) + " < 1");
  if (kind_ == Kind::Periodic) return maps_[static_cast<std::size_t>((i - 1) % static_cast<long>(maps_.size()))];
  if (i > *horizon_)
    throw IndexError("map index " + std::to_string(i) + " exceeds horizon " + std::to_string(*horizon_));
  return maps_[static_cast<std::size_t>(i - 1)];
}

void MapSequence::require_steps(long first, long last) const {
  if (last < first) return;
  if (first < 1) throw IndexError("map index " + std::to_string(first) + " < 1");
  if (kind_ == Kind::Finite && last > *horizon_)
    throw IndexError("orbit needs f_" + std::to_string(last) + " but horizon is " +
                     std::to_string(*horizon_));
}

}  // namespace nds
