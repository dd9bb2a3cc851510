// Acceptance run: one PASS/FAIL line per criterion. With arguments, only the
// listed criteria run. Exit status 1 when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "nds/bounds.hpp"
#include "nds/bowen.hpp"
#include "nds/cli.hpp"
#include "nds/corpus.hpp"
#include "nds/errors.hpp"
#include "nds/pseudograph.hpp"
#include "nds/recurrence.hpp"
#include "nds/systems.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using nds::BowenParams;
using nds::Grid;
using nds::MapSequence;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const MapSequence& sys(const std::string& name) { return nds::load_fixture(name).system; }

// Default estimator parameters and the shared reference parameters.
const BowenParams kDefault{0.02, 4, 12, 4000};
const BowenParams kReference{0.05, 1, 5, 2000};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome tent_entropy() {
  std::vector<double> ns, logs;
  for (long n = 4; n <= 12; ++n) {
    ns.push_back(static_cast<double>(n));
    logs.push_back(std::log(static_cast<double>(oracle::laps(oracle::exact_composition(sys("tent"), n)))));
  }
  const double target = slope(ns, logs);
  const auto t0 = std::chrono::steady_clock::now();
  const double h = nds::entropy_estimate(sys("tent"), kDefault).value;
  const double secs = seconds_since(t0);
  return {std::abs(h - target) <= 0.10 && secs < 60.0,
          fmt("estimate %.4f, lap oracle %.4f, |diff| %.4f (tol 0.10), %.1f s (limit 60)", h, target,
              std::abs(h - target), secs)};
}

double reference_entropy(const std::string& name) { return nds::entropy_estimate(sys(name), kReference).value; }

Outcome pseudo_equals_entropy() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const char* name : {"tent", "example-gh", "reflection", "identity"}) {
    const double h = reference_entropy(name);
    nds::PseudoParams p{kReference, 1.0 / kReference.grid_size};
    const double hp = nds::pseudo_entropy(sys(name), p).value;
    ok = ok && std::abs(hp - h) <= 0.15;
    detail += fmt("%s h_p %.4f h %.4f; ", name, hp, h);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 120.0;
  return {ok, detail + fmt("tol 0.15, %.1f s (limit 120)", secs)};
}

Outcome periodic_equals_entropy() {
  bool ok = true;
  std::string detail;
  const Grid grid(kReference.grid_size);
  for (const char* name : {"tent", "example-gh"}) {
    const double h = reference_entropy(name);
    const auto r = nds::periodic_pseudo_entropy(sys(name), grid.spacing(), grid, 4, 16);
    const bool transitive = nds::is_chain_transitive(sys(name), grid.spacing(), grid);
    ok = ok && transitive && std::abs(r.estimate.value - h) <= 0.15 &&
         std::abs(r.estimate.value - r.trace_regression) <= 0.05;
    detail += fmt("%s H_p %.4f h %.4f traces %.4f transitive %d; ", name, r.estimate.value, h,
                  r.trace_regression, transitive);
  }
  return {ok, detail + "tol 0.15 and 0.05"};
}

Outcome fix_growth() {
  const auto& tent = sys("tent");
  bool counts_ok = true;
  std::vector<long> ns;
  for (long n = 1; n <= 16; ++n) {
    ns.push_back(n);
    const long lib = nds::fixed_point_count(tent, n);
    const long exact = oracle::fixed_points(oracle::exact_composition(tent, n));
    if (lib != (1L << n) || exact != (1L << n)) counts_ok = false;
  }
  const double h = nds::fix_growth_entropy(tent, ns).value;
  const bool ok = counts_ok && std::abs(h - std::log(2.0)) <= 0.02;
  return {ok, fmt("slope %.5f vs log 2 (tol 0.02); counts 2^n for n <= 16: %s", h, counts_ok ? "yes" : "no")};
}

Outcome mixing_bound() {
  const Grid grid(2000);
  bool ok = true;
  std::string detail;
  for (const char* name : {"tent", "identity"}) {
    const auto& F = sys(name);
    const double c = nds::lipschitz_constant(F);
    for (double delta : {0.02, 0.05, 0.1})
      for (double eps : {0.01, 0.02}) {
        if (!(eps < delta)) continue;
        const long m = nds::chain_mixing_time(F, eps, delta, grid, nds::default_confirm_horizon(F)).value;
        const double bound = nds::mixing_time_lower_bound(c, 1.0, delta, eps);
        if (static_cast<double>(m) < bound - 1.0) {
          ok = false;
          detail += fmt("%s d=%g e=%g m %ld < bound %.3f - 1; ", name, delta, eps, m, bound);
        }
      }
  }
  const auto& id = sys("identity");
  const long m = nds::chain_mixing_time(id, 0.1, 0.1, grid, nds::default_confirm_horizon(id)).value;
  const double bound = nds::mixing_time_lower_bound(1.0, 1.0, 0.1, 0.1);
  ok = ok && std::abs(bound - 4.0) < 1e-12 && m >= 8 && m <= 10;
  return {ok, detail + fmt("all cells m >= bound - 1: %s; identity d=e=0.1 bound %.3f measured %ld (expect about 9)",
                           detail.empty() ? "yes" : "no", bound, m)};
}

Outcome entropy_lower_bound() {
  const Grid grid(2000);
  const std::vector<double> deltas{0.05, 0.02, 0.01};
  const double lb = nds::entropy_lower_bound(sys("tent"), deltas, 0.01, grid).value;
  const double h = reference_entropy("tent");
  auto raises = [&](const char* name) {
    try {
      nds::entropy_lower_bound(sys(name), deltas, 0.01, grid);
    } catch (const nds::NotChainMixing&) {
      return true;
    }
    return false;
  };
  const bool id = raises("identity"), two = raises("two-attractor");
  const bool ok = lb >= 0.45 && lb <= 0.75 && lb <= h + 0.1 && id && two;
  return {ok, fmt("tent bound %.4f (want [0.45, 0.75] and <= h %.4f + 0.1); NotChainMixing identity %d two-attractor %d",
                  lb, h, id, two)};
}

Outcome chain_recurrent_entropy() {
  auto both = [](const std::string& name) {
    const auto& F = sys(name);
    const Grid grid(kDefault.grid_size);
    std::vector<double> cand;
    for (int i : nds::chain_recurrent_set(F, grid.spacing(), grid)) cand.push_back(grid.center(i));
    return std::pair{nds::entropy_estimate(F, kDefault).value, nds::entropy_estimate(F, kDefault, cand).value};
  };
  const auto [two_full, two_cr] = both("two-attractor");
  const auto [tent_full, tent_cr] = both("tent");
  const bool ok = two_full <= 0.05 && two_cr <= 0.05 && std::abs(tent_full - tent_cr) <= 0.1;
  return {ok, fmt("two-attractor full %.4f CR %.4f (want <= 0.05); tent full %.4f CR %.4f (tol 0.1)", two_full,
                  two_cr, tent_full, tent_cr)};
}

Outcome brute_force() {
  long cases = 0, bad = 0;
  std::string first;
  auto miss = [&](const std::string& what) {
    ++bad;
    if (first.empty()) first = what;
  };
  const std::vector<std::pair<int, int>> alpha_mults{{1, 1}, {3, 2}, {3, 1}};
  for (const auto& name : nds::fixture_names()) {
    const auto& F = sys(name);
    const long q = F.is_periodic() ? F.period() : 1;
    for (int N : {10, 20, 30})
      for (auto [num, den] : alpha_mults) {
        const oracle::Q alpha = oracle::Q(num) / oracle::Q(den * N);
        const double alpha_d = static_cast<double>(num) / (den * N);
        const Grid grid(N);
        for (long n = q; n <= 6; n += q) {
          ++cases;
          const auto lib = nds::count_periodic_pseudo_orbits(F, n, alpha_d, grid);
          const long long ref = oracle::closed_paths(F, n, N, alpha);
          if (lib != ref) miss(fmt("(a) %s N=%d alpha=%d/%d n=%ld: %s vs %lld", name.c_str(), N, num, den, n,
                                   lib.str().c_str(), ref));
        }
        ++cases;
        if (nds::chain_recurrent_set(F, alpha_d, grid) != oracle::chain_return_nodes(F, N, alpha))
          miss(fmt("(b) %s N=%d alpha=%d/%d", name.c_str(), N, num, den));
      }
    const std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sep_cases{
        {12, {{2, 5}, {1, 2}}}, {18, {{1, 4}, {3, 10}, {2, 5}}}};
    for (const auto& [N, epss] : sep_cases)
      for (auto [num, den] : epss)
        for (long n = 1; n <= 6; ++n) {
          ++cases;
          const double eps_d = static_cast<double>(num) / den;
          const long lib = nds::max_separated_count(F, n, eps_d, Grid(N)).count;
          const long ref = oracle::max_separated(F, n, oracle::Q(num) / oracle::Q(den), N);
          if (lib != ref) miss(fmt("(c) %s N=%d eps=%d/%d n=%ld: %ld vs %ld", name.c_str(), N, num, den, n, lib, ref));
        }
  }
  return {bad == 0, fmt("%ld of %ld cases agree exactly", cases - bad, cases) + (first.empty() ? "" : "; first miss " + first)};
}

Outcome uniform_limit() {
  const double lim = nds::entropy_estimate(sys("tent-uniform-limit"), kDefault).value;
  const double tent = nds::entropy_estimate(sys("tent"), kDefault).value;
  return {lim <= tent + 0.05, fmt("limit family %.4f vs tent %.4f + 0.05", lim, tent)};
}

Outcome zero_entropy() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"reflection", "identity"}) {
    const auto& F = sys(name);
    std::map<std::string, double> v;
    v["bowen default"] = nds::entropy_estimate(F, kDefault).value;
    v["bowen reference"] = nds::entropy_estimate(F, kReference).value;
    for (const auto& [label, params] : {std::pair{"default", kDefault}, std::pair{"reference", kReference}}) {
      const double spacing = 1.0 / params.grid_size;
      v[std::string("pseudo ") + label] = nds::pseudo_entropy(F, {params, spacing}).value;
      v[std::string("pseudo blocks ") + label] =
          nds::pseudo_entropy(F, {params, spacing, nds::PseudoCount::Blocks}).value;
    }
    const Grid grid(kReference.grid_size);
    v["periodic"] = nds::periodic_pseudo_entropy(F, grid.spacing(), grid, 4, 16).estimate.value;
    double worst = 0;
    for (const auto& [k, x] : v) worst = std::max(worst, x);
    std::string fix = "fix growth n/a";
    try {
      std::vector<long> ns{1, 2, 3, 4, 5, 6, 7, 8};
      const double h = nds::fix_growth_entropy(F, ns).value;
      worst = std::max(worst, h);
      fix = fmt("fix growth %.4f", h);
    } catch (const nds::NonIsolatedFixedPoints&) {
      fix = "fix growth undefined (non-isolated fixed points)";
    }
    ok = ok && worst <= 0.02;
    detail += fmt("%s max %.4f over %zu estimators, %s; ", name, worst, v.size(), fix.c_str());
  }
  return {ok, detail + "want <= 0.02"};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), dir).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / ("ndsent-acceptance-" + std::to_string(::getpid()));
  std::map<std::string, std::string> runs[2];
  int status[2] = {0, 0};
  for (int r = 0; r < 2; ++r) {
    nds::cli::RunConfig cfg;
    cfg.system = "example-gh";
    cfg.seed = 7;
    cfg.output_dir = (base / ("run" + std::to_string(r))).string();
    std::ostringstream out, err;
    status[r] = nds::cli::run("verify", cfg, out, err);
    runs[r] = snapshot(cfg.output_dir);
  }
  fs::remove_all(base);
  const bool same = !runs[0].empty() && runs[0] == runs[1];
  return {same && status[0] == status[1],
          fmt("%zu artifacts, byte-identical %s, exit %d/%d", runs[0].size(), same ? "yes" : "no", status[0],
              status[1])};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"tent entropy vs lap oracle", tent_entropy},
      {"pseudo-entropy equals entropy", pseudo_equals_entropy},
      {"periodic-pseudo-entropy equals entropy", periodic_equals_entropy},
      {"fixed-point growth", fix_growth},
      {"mixing-time lower bound", mixing_bound},
      {"entropy lower bound soundness", entropy_lower_bound},
      {"entropy on the chain recurrent set", chain_recurrent_entropy},
      {"brute-force oracle equivalence", brute_force},
      {"uniform-limit inequality", uniform_limit},
      {"zero-entropy controls", zero_entropy},
      {"determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria().size()); ++k) selected.push_back(k);
  bool all_pass = true;
  for (int k : selected) {
    if (k < 1 || k > static_cast<int>(criteria().size())) {
      std::printf("criterion %d: unknown\n", k);
      all_pass = false;
      continue;
    }
    const auto& c = criteria()[static_cast<std::size_t>(k - 1)];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("criterion %2d %-40s %s  %s\n", k, c.title, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
