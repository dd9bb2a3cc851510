#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nds/bounds.hpp"
#include "nds/errors.hpp"
#include "nds/recurrence.hpp"
#include "oracles.hpp"

using nds::Grid;

namespace {

std::vector<int> all_nodes(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool near_fixed_points(const std::vector<int>& nodes, const Grid& grid, double tol) {
  for (int i : nodes) {
    const double x = grid.center(i);
    if (std::min({std::abs(x - 0.25), std::abs(x - 0.5), std::abs(x - 0.75)}) > tol) return false;
  }
  return true;
}

bool touches_each_fixed_point(const std::vector<int>& nodes, const Grid& grid, double tol) {
  for (double p : {0.25, 0.5, 0.75})
    if (std::none_of(nodes.begin(), nodes.end(), [&](int i) { return std::abs(grid.center(i) - p) <= tol; }))
      return false;
  return true;
}

}  // namespace

TEST_SUITE("recurrence") {
  TEST_CASE("chain recurrent set examples") {
    const Grid g100(100);
    CHECK(nds::chain_recurrent_set(fixture("identity"), 1.5 * g100.spacing(), g100) == all_nodes(100));
    const Grid g500(500);
    CHECK(nds::chain_recurrent_set(fixture("tent"), g500.spacing(), g500) == all_nodes(500));
    const Grid g200(200);
    const auto cr = nds::chain_recurrent_set(fixture("two-attractor"), g200.spacing(), g200);
    CHECK(near_fixed_points(cr, g200, 0.02));
    CHECK(touches_each_fixed_point(cr, g200, 0.02));
  }

  TEST_CASE("chain recurrent set equals exhaustive return search") {
    for (const auto& name : nds::fixture_names()) {
      const auto& F = fixture(name);
      for (int N : {12, 25})
        for (auto [num, den] : {std::pair{3, 2}, std::pair{3, 1}}) {
          const Grid grid(N);
          CHECK(nds::chain_recurrent_set(F, static_cast<double>(num) / (den * N), grid) ==
                oracle::chain_return_nodes(F, N, oracle::Q(num) / oracle::Q(den * N)));
        }
    }
  }

  TEST_CASE("chain transitivity examples") {
    const Grid g500(500);
    CHECK(nds::is_chain_transitive(fixture("example-gh"), 2 * g500.spacing(), g500));
    const Grid g100(100);
    CHECK(nds::is_chain_transitive(fixture("identity"), 1.5 * g100.spacing(), g100));
    CHECK_FALSE(nds::is_chain_transitive(fixture("two-attractor"), g100.spacing(), g100));
    CHECK(nds::is_chain_transitive(fixture("tent"), g500.spacing(), g500));
  }

  TEST_CASE("transitive systems are chain recurrent everywhere") {
    for (const auto& name : nds::fixture_names())
      for (double mult : {1.0, 1.5, 3.0}) {
        const Grid grid(100);
        if (nds::is_chain_transitive(fixture(name), mult * grid.spacing(), grid))
          CHECK(nds::chain_recurrent_set(fixture(name), mult * grid.spacing(), grid) == all_nodes(100));
      }
  }

  TEST_CASE("chain recurrent sets grow with alpha") {
    const Grid grid(120);
    for (const auto& name : nds::fixture_names()) {
      std::vector<int> prev;
      for (double mult : {0.6, 1.0, 1.5, 3.0, 6.0}) {
        const auto cr = nds::chain_recurrent_set(fixture(name), mult * grid.spacing(), grid);
        CHECK(subset(prev, cr));
        prev = cr;
      }
    }
  }

  TEST_CASE("non-wandering examples") {
    const Grid g100(100);
    CHECK(nds::nonwandering_nodes(fixture("identity"), 1.5 * g100.spacing(), g100, 4) == all_nodes(100));
    const Grid g200(200);
    CHECK(nds::nonwandering_nodes(fixture("tent"), g200.spacing(), g200, 400) == all_nodes(200));
    const auto nw = nds::nonwandering_nodes(fixture("two-attractor"), g200.spacing(), g200, 400);
    CHECK(near_fixed_points(nw, g200, 0.02));
    CHECK(touches_each_fixed_point(nw, g200, 0.02));
    CHECK_THROWS_AS(nds::nonwandering_nodes(fixture("example-gh"), g100.spacing(), g100, 1), nds::ConfigurationError);
    CHECK_THROWS_AS(nds::nonwandering_nodes(fixture("tent-uniform-limit"), g100.spacing(), g100, 10),
                    nds::ConfigurationError);
  }

  TEST_CASE("non-wandering nodes are chain recurrent") {
    const Grid grid(150);
    for (const auto& name : nds::fixture_names()) {
      const auto& F = fixture(name);
      if (!F.is_periodic()) continue;
      for (double mult : {1.0, 2.0}) {
        const double a = mult * grid.spacing();
        CHECK(subset(nds::nonwandering_nodes(F, a, grid, 300), nds::chain_recurrent_set(F, a, grid)));
      }
    }
  }

  TEST_CASE("omega-limit examples") {
    const Grid grid(200);
    CHECK(nds::omega_limit_nodes(fixture("identity"), 0.3, 50, 10, 1e-3, grid) ==
          std::vector<int>{grid.nearest(0.3)});
    const auto half = single({0, 1}, {0, 0.5});
    CHECK(nds::omega_limit_nodes(half, 1.0, 60, 10, 1e-3, grid) == std::vector<int>{0});
    CHECK(nds::omega_limit_nodes(fixture("two-attractor"), 0.1, 80, 10, 1e-3, grid) ==
          std::vector<int>{grid.nearest(0.25)});
  }

  TEST_CASE("chain mixing time examples") {
    const Grid g1000(1000);
    const auto& id = fixture("identity");
    CHECK(nds::chain_mixing_time(id, 1.5, 0.1, g1000, 12).value == 1);
    const long m_id = nds::chain_mixing_time(id, 0.1, 0.1, g1000, nds::default_confirm_horizon(id)).value;
    CHECK(m_id >= 8);
    CHECK(m_id <= 10);
    CHECK(m_id >= nds::mixing_time_lower_bound(1, 1, 0.1, 0.1));

    const Grid g2000(2000);
    const auto& tent = fixture("tent");
    const auto r = nds::chain_mixing_time(tent, 0.02, 0.05, g2000, nds::default_confirm_horizon(tent));
    CHECK(r.value >= 3);
    CHECK(r.value <= 5);
    CHECK(r.value >= nds::mixing_time_lower_bound(2, 1, 0.05, 0.02));
    CHECK(r.confirm_horizon == 12);
    CHECK(r.per_point_max_witness >= 0);
    CHECK(r.per_point_max_witness < 2000);
  }

  TEST_CASE("chain mixing time is non-increasing in epsilon and delta") {
    const Grid grid(500);
    for (const char* name : {"tent", "identity"}) {
      const auto& F = fixture(name);
      const long confirm = nds::default_confirm_horizon(F);
      for (double delta : {0.05, 0.1, 0.2}) {
        long prev = -1;
        for (double eps : {0.01, 0.02, 0.04}) {
          const long m = nds::chain_mixing_time(F, eps, delta, grid, confirm).value;
          if (prev >= 0) CHECK(m <= prev);
          prev = m;
        }
      }
      for (double eps : {0.01, 0.02}) {
        long prev = -1;
        for (double delta : {0.05, 0.1, 0.2}) {
          const long m = nds::chain_mixing_time(F, eps, delta, grid, confirm).value;
          if (prev >= 0) CHECK(m <= prev);
          prev = m;
        }
      }
    }
  }

  TEST_CASE("systems that do not chain mix") {
    const Grid grid(300);
    for (const char* name : {"example-gh", "two-attractor", "tent-uniform-limit"}) {
      const auto& F = fixture(name);
      try {
        nds::chain_mixing_time(F, 0.01, 0.05, grid, nds::default_confirm_horizon(F));
        FAIL("expected NotChainMixing for ", name);
      } catch (const nds::NotChainMixing& e) {
        CHECK(e.worst_node() >= 0);
        CHECK(e.worst_node() < 300);
      }
    }
  }

  TEST_CASE("chain mixing time preconditions") {
    const Grid grid(100);
    const auto& tent = fixture("tent");
    CHECK_THROWS_AS(nds::chain_mixing_time(tent, 0.005, 0.1, grid, 12), nds::ConfigurationError);
    CHECK_THROWS_AS(nds::chain_mixing_time(tent, 0.2, 0.1, grid, 12), nds::ConfigurationError);
    CHECK_THROWS_AS(nds::chain_mixing_time(tent, 0.02, 0.1, grid, -1), nds::ConfigurationError);
    CHECK(nds::default_confirm_horizon(tent) == 12);
    CHECK(nds::default_confirm_horizon(fixture("example-gh")) == 14);
    CHECK(nds::default_confirm_horizon(fixture("tent-uniform-limit")) == 12);
  }

  TEST_CASE("grid test for topological mixing") {
    const Grid grid(1000);
    CHECK(nds::grid_topologically_mixing(fixture("tent"), 0.05, grid));
    CHECK_FALSE(nds::grid_topologically_mixing(fixture("identity"), 0.05, grid));
    CHECK_FALSE(nds::grid_topologically_mixing(fixture("two-attractor"), 0.05, grid));
  }

  TEST_CASE("recurrence report") {
    const Grid grid(200);
    const auto tent = nds::recurrence_report(fixture("tent"), grid.spacing(), grid);
    CHECK(tent.transitive);
    CHECK(tent.scc_count == 1);
    CHECK(tent.chain_recurrent_nodes == all_nodes(200));
    const auto two = nds::recurrence_report(fixture("two-attractor"), grid.spacing(), grid);
    CHECK_FALSE(two.transitive);
    CHECK(two.scc_count > 1);
    const auto lim = nds::recurrence_report(fixture("tent-uniform-limit"), grid.spacing(), grid);
    CHECK(lim.scc_count >= 1);
  }

  TEST_CASE("run-length node ranges") {
    const std::vector<int> nodes{0, 1, 2, 3, 5, 7, 8, 9};
    CHECK(nds::encode_node_ranges(nodes) == "0-3,5,7-9");
    CHECK(nds::decode_node_ranges("0-3,5,7-9") == nodes);
    CHECK(nds::encode_node_ranges({}) == "");
    CHECK(nds::decode_node_ranges("").empty());
  }
}
