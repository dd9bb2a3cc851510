#pragma once

#include <iosfwd>
#include <string>

#include "nds/map_sequence.hpp"

namespace nds {

// Text format, one `key = value` per statement, `#` starts a comment:
//
//   kind = "periodic"            # or "finite"
//   horizon = 32                 # finite only
//   maps = [
//     { breakpoints = [0, 1/2, 1], values = [0, 1, 0] },
//   ]
//
// Numbers are decimals or fractions p/q. Arrays may span lines and allow a
// trailing comma.

/// ParseError (with line) on syntax or schema problems, ValidationError when a
/// map breaks its invariants.
MapSequence parse_system(const std::string& text, const std::string& source = "<string>");
MapSequence parse_system_file(const std::string& path);

/// Shortest round-trip decimal for every number, so parse(serialize(F)) == F
/// bit for bit.
std::string serialize_system(const MapSequence& F);
void write_system_file(const std::string& path, const MapSequence& F);

}  // namespace nds
