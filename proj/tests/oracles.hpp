#pragma once

// Independent reference computations used only by the tests. Everything here
// works in exact rational arithmetic and shares no code with the library
// beyond reading map data.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "nds/map_sequence.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

/// The small-denominator rational a double was meant to be (continued
/// fractions, denominators up to 1e9).
Q rationalize(double x);

struct ExactMap {
  std::vector<Q> bp;
  std::vector<Q> val;
  Q operator()(const Q& x) const;
};

ExactMap exact(const nds::PiecewiseLinearMap& m);
ExactMap identity_map();

/// outer o inner.
ExactMap compose(const ExactMap& outer, const ExactMap& inner);

/// F_{[1,n]} = f_n o ... o f_1.
ExactMap exact_composition(const nds::MapSequence& F, long n);

/// Maximal monotone pieces; flat pieces join their neighbours.
long laps(const ExactMap& m);

/// Solutions of m(x) = x, or -1 when a piece lies on the diagonal.
long fixed_points(const ExactMap& m);

Q center(int i, int N);

/// adj[i][j] != 0 iff |f_k(p_i) - p_j| < alpha.
using Adjacency = std::vector<std::vector<char>>;
Adjacency step_adjacency(const nds::MapSequence& F, long k, int N, const Q& alpha);

/// Closed sequences x_0 .. x_n = x_0 with an edge at every step k = 1..n,
/// enumerated one by one.
long long closed_paths(const nds::MapSequence& F, long n, int N, const Q& alpha);

/// Nodes x admitting an alpha-chain of length >= 1 from x back to x for some
/// start time (every phase of a periodic sequence, every time in the horizon
/// of a finite one).
std::vector<int> chain_return_nodes(const nds::MapSequence& F, int N, const Q& alpha);

/// Exact maximum size of a set of grid centres with pairwise d_n > eps, by
/// exhaustive search.
long max_separated(const nds::MapSequence& F, long n, const Q& eps, int N);

}  // namespace oracle
