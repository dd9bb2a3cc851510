#include <doctest.h>

#include <algorithm>

#include "nds/corpus.hpp"
#include "nds/errors.hpp"
#include "nds/systems.hpp"

TEST_SUITE("corpus") {
  TEST_CASE("registry") {
    const std::vector<std::string> expected{"example-gh", "tent", "reflection", "identity", "two-attractor",
                                            "tent-uniform-limit"};
    auto names = nds::fixture_names();
    auto want = expected;
    std::sort(names.begin(), names.end());
    std::sort(want.begin(), want.end());
    CHECK(names == want);
  }

  TEST_CASE("unknown names list the registry") {
    CHECK_THROWS_WITH_AS(nds::load_fixture("rotation"), doctest::Contains("tent-uniform-limit"), nds::LookupError);
  }

  TEST_CASE("example-gh maps") {
    const auto& f = nds::load_fixture("example-gh");
    REQUIRE(f.system.period() == 2);
    const auto& g = f.system.maps()[0];
    const auto& h = f.system.maps()[1];
    CHECK(std::vector<double>(g.breakpoints().begin(), g.breakpoints().end()) == std::vector<double>{0, 0.25, 0.75, 1});
    CHECK(std::vector<double>(g.values().begin(), g.values().end()) == std::vector<double>{0.5, 1, 0, 0.5});
    CHECK(std::vector<double>(h.breakpoints().begin(), h.breakpoints().end()) == std::vector<double>{0, 0.5, 0.75, 1});
    CHECK(std::vector<double>(h.values().begin(), h.values().end()) == std::vector<double>{0.5, 1, 0, 0.5});
    CHECK(f.tags.count("transitive") == 1);
  }

  TEST_CASE("identity and tent maps") {
    const auto& id = nds::load_fixture("identity").system.maps()[0];
    CHECK(id == nds::PiecewiseLinearMap({0, 1}, {0, 1}));
    const auto& tent = nds::load_fixture("tent").system.maps()[0];
    CHECK(tent == nds::PiecewiseLinearMap({0, 0.5, 1}, {0, 1, 0}));
  }

  TEST_CASE("two-attractor fixed points") {
    const auto& F = nds::load_fixture("two-attractor").system;
    const auto& f = F.maps()[0];
    CHECK(f(0.25) == 0.25);
    CHECK(f(0.5) == 0.5);
    CHECK(f(0.75) == 0.75);
    CHECK(nds::fixed_point_count(F, 1) == 3);
  }

  TEST_CASE("uniform-limit family approaches the tent") {
    const auto& F = nds::load_fixture("tent-uniform-limit").system;
    REQUIRE(F.horizon().has_value());
    double prev = 0.0;
    for (long k = 1; k <= *F.horizon(); ++k) {
      const double peak = F.map_at(k)(0.5);
      CHECK(peak > prev);
      CHECK(peak < 1.0);
      CHECK(peak == doctest::Approx((2.0 - 1.0 / (k + 4)) / 2));
      prev = peak;
    }
  }

  TEST_CASE("tags and goldens") {
    for (const auto& name : nds::fixture_names()) {
      const auto& f = nds::load_fixture(name);
      CHECK(f.name == name);
      bool has_lipschitz_tag = false;
      for (const auto& t : f.tags) has_lipschitz_tag = has_lipschitz_tag || t.rfind("lipschitz-c=", 0) == 0;
      CHECK(has_lipschitz_tag);
      for (const auto& [metric, golden] : f.goldens) {
        CHECK_FALSE(golden.basis.empty());
        CHECK(golden.tolerance >= 0.0);
      }
    }
    CHECK(nds::load_fixture("tent").tags.count("lipschitz-c=2") == 1);
    CHECK(nds::load_fixture("identity").tags.count("zero-entropy") == 1);
  }
}
