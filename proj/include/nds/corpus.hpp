#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nds/map_sequence.hpp"

namespace nds {

struct Golden {
  double value = 0.0;
  double tolerance = 0.0;
  std::string basis;  // where the number comes from (oracle or hand derivation)
};

struct Fixture {
  std::string name;
  MapSequence system;
  std::set<std::string> tags;
  std::map<std::string, Golden> goldens;
};

/// Registry: example-gh, tent, reflection, identity, two-attractor,
/// tent-uniform-limit. LookupError (listing the registry) otherwise.
const Fixture& load_fixture(const std::string& name);

std::vector<std::string> fixture_names();

}  // namespace nds
