#pragma once

namespace nds {

/// Absolute snap tolerance on [0,1]. Distances within this of a threshold
/// are treated as lying exactly on it, so ties resolve the same way no
/// matter how the operands were rounded.
inline constexpr double kSnap = 1e-12;

inline bool strictly_less(double a, double b) { return a < b - kSnap; }
inline bool strictly_greater(double a, double b) { return a > b + kSnap; }
inline bool less_or_equal(double a, double b) { return a <= b + kSnap; }

}  // namespace nds
