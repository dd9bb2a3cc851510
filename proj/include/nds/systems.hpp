#pragma once

#include "nds/map_sequence.hpp"

namespace nds {

/// F_{[i,n]}(x) = f_{i+n-1} o ... o f_i (x); n = 0 is the identity.
double compose_orbit(const MapSequence& F, long i, long n, double x);

/// Points F_{[i,k]}(x) for k = 0..n.
OrbitSegment orbit_segment(const MapSequence& F, long i, long n, double x);

/// Largest |slope| over every map the sequence can produce.
double lipschitz_constant(const MapSequence& F);

/// F_{[i,n]} as a single piecewise-linear map. Breakpoints are propagated as
/// preimages of each map's breakpoints; on dyadic data the arithmetic is exact.
PiecewiseLinearMap compose_maps(const MapSequence& F, long i, long n);

/// Number of solutions of F_{[1,n]}(x) = x. Throws NonIsolatedFixedPoints
/// when a whole linear piece of the composition lies on the diagonal.
long fixed_point_count(const MapSequence& F, long n);

/// Number of maximal monotone intervals of F_{[1,n]}.
long lap_count(const MapSequence& F, long n);

/// Laps of a single map; flat pieces join their neighbours.
long lap_count(const PiecewiseLinearMap& m);

}  // namespace nds
