#include "nds/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "nds/errors.hpp"
#include "nds/systems.hpp"

namespace nds {

namespace {

using PL = PiecewiseLinearMap;

std::string lipschitz_tag(const MapSequence& F) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "lipschitz-c=%.6g", lipschitz_constant(F));
  return buf;
}

Fixture make(std::string name, MapSequence system, std::set<std::string> tags,
             std::map<std::string, Golden> goldens) {
  tags.insert(lipschitz_tag(system));
  return Fixture{std::move(name), std::move(system), std::move(tags), std::move(goldens)};
}

std::vector<Fixture> build_registry() {
  const double ln2 = std::log(2.0);
  std::vector<Fixture> reg;

  // g and h on the quarters of [0,1]; g has slopes +-2, h has 1, -4, 2.
  const PL g({0.0, 0.25, 0.75, 1.0}, {0.5, 1.0, 0.0, 0.5});
  const PL h({0.0, 0.5, 0.75, 1.0}, {0.5, 1.0, 0.0, 0.5});
  reg.push_back(make("example-gh", MapSequence::periodic({g, h}), {"transitive"},
                     {{"entropy", {ln2, 0.15, "lap count of h o g grows like 4^k"}},
                      {"lipschitz", {4.0, 0.0, "largest slope of h"}}}));

  reg.push_back(make("tent", MapSequence::periodic({PL({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0})}),
                     {"transitive", "mixing", "expansive"},
                     {{"entropy", {ln2, 0.10, "lap count 2^n"}},
                      {"fix_growth", {ln2, 0.02, "per-piece root count 2^n"}},
                      {"lipschitz", {2.0, 0.0, "slope of each piece"}}}));

  reg.push_back(make("reflection", MapSequence::periodic({PL({0.0, 1.0}, {1.0, 0.0})}), {"zero-entropy"},
                     {{"entropy", {0.0, 0.02, "isometry: d_n = d"}}}));

  reg.push_back(make("identity", MapSequence::periodic({PL::identity()}), {"zero-entropy"},
                     {{"entropy", {0.0, 0.02, "isometry: d_n = d"}}}));

  // Attracting fixed points at 1/4 and 3/4, repelling at 1/2; no piece has
  // slope 1, so every fixed point is isolated.
  reg.push_back(make("two-attractor",
                     MapSequence::periodic({PL({0.0, 0.25, 0.375, 0.5, 0.625, 0.75, 1.0},
                                               {0.125, 0.25, 0.3125, 0.5, 0.6875, 0.75, 0.875})}),
                     {"zero-entropy"},
                     {{"entropy", {0.0, 0.05, "orbits converge to fixed points"}},
                      {"lipschitz", {1.5, 0.0, "steepest piece"}}}));

  // T_k has slope s_k = 2 - 1/(k+4) and tends uniformly to the tent.
  const long horizon = 32;
  std::vector<PL> maps;
  for (long k = 1; k <= horizon; ++k) {
    const double s = 2.0 - 1.0 / static_cast<double>(k + 4);
    maps.emplace_back(std::vector<double>{0.0, 0.5, 1.0}, std::vector<double>{0.0, s / 2.0, 0.0});
  }
  reg.push_back(make("tent-uniform-limit", MapSequence::finite(std::move(maps), horizon), {},
                     {{"entropy_upper", {ln2, 0.05, "limit map is the tent"}}}));
  return reg;
}

const std::vector<Fixture>& registry() {
  static const std::vector<Fixture> reg = build_registry();
  return reg;
}

}  // namespace

const Fixture& load_fixture(const std::string& name) {
  for (const auto& f : registry())
    if (f.name == name) return f;
  std::string known;
  for (const auto& n : fixture_names()) known += (known.empty() ? "" : ", ") + n;
  throw LookupError("unknown fixture '" + name + "' (known: " + known + ")");
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : registry()) out.push_back(f.name);
  return out;
}

}  // namespace nds
