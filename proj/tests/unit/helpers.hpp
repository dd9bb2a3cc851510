#pragma once

#include <string>

#include "nds/corpus.hpp"
#include "nds/map_sequence.hpp"

inline const nds::MapSequence& fixture(const std::string& name) { return nds::load_fixture(name).system; }

inline nds::MapSequence single(std::vector<double> bp, std::vector<double> val) {
  return nds::MapSequence::periodic({nds::PiecewiseLinearMap(std::move(bp), std::move(val))});
}
