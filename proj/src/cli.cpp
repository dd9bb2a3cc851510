#include "nds/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "nds/bounds.hpp"
#include "nds/bowen.hpp"
#include "nds/corpus.hpp"
#include "nds/errors.hpp"
#include "nds/pseudograph.hpp"
#include "nds/recurrence.hpp"
#include "nds/system_file.hpp"
#include "nds/systems.hpp"

namespace nds::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Resolved {
  std::string command;
  std::string system_name;
  MapSequence system;
  int grid_size;
  std::vector<double> alpha, epsilon, delta;
  long n_min, n_max;
  int jobs;
  std::uint64_t seed;
  fs::path out;
};

MapSequence load_system(const std::string& name) {
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return load_fixture(name).system;
  if (fs::exists(name)) return parse_system_file(name);
  return load_fixture(name).system;  // LookupError listing the registry
}

void require_sorted_positive(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) throw ConfigurationError(std::string(what) + " values must be positive");
    if (i > 0 && !(xs[i - 1] < xs[i])) throw ConfigurationError(std::string(what) + " list must be sorted ascending");
  }
}

// Per-command defaults: `entropy` uses the fine Bowen setting, everything
// else the reference setting N = 2000, eps = 0.05, n in [1, 5]. The trace
// diagnostic of `periodic-entropy` needs longer closed walks.
constexpr long kTraceMin = 4;
constexpr long kTraceMax = 16;

Resolved resolve(const std::string& command, const RunConfig& cfg) {
  const bool fine = command == "entropy";
  Resolved r{command,
             cfg.system,
             load_system(cfg.system),
             cfg.grid_size.value_or(fine ? 4000 : 2000),
             cfg.alpha,
             cfg.epsilon,
             cfg.delta,
             cfg.n_min.value_or(fine ? 4 : command == "periodic-entropy" ? kTraceMin : 1),
             cfg.n_max.value_or(fine ? 12 : command == "periodic-entropy" ? kTraceMax : 5),
             cfg.jobs,
             cfg.seed,
             cfg.output_dir};
  if (r.grid_size < 2) throw ConfigurationError("grid size must be >= 2");
  if (r.jobs < 1) throw ConfigurationError("jobs must be >= 1");
  if (r.n_min < 1 || r.n_max < r.n_min) throw ConfigurationError("need 1 <= n_min <= n_max");
  const double spacing = 1.0 / r.grid_size;
  if (r.alpha.empty()) r.alpha = {spacing};
  if (r.epsilon.empty()) {
    if (command == "entropy") r.epsilon = {0.02};
    else if (command == "mixing-time" || command == "bounds") r.epsilon = {0.01, 0.02};
    else r.epsilon = {0.05};
  }
  if (r.delta.empty()) {
    if (command == "bounds") r.delta = {0.01, 0.02, 0.05, 0.1};
    else r.delta = {0.1};
  }
  require_sorted_positive(r.alpha, "alpha");
  require_sorted_positive(r.epsilon, "epsilon");
  require_sorted_positive(r.delta, "delta");
  return r;
}

Json config_json(const Resolved& r) {
  return Json{{"system", r.system_name}, {"grid_size", r.grid_size}, {"alpha", r.alpha},
              {"epsilon", r.epsilon},    {"delta", r.delta},         {"n_min", r.n_min},
              {"n_max", r.n_max},        {"jobs", r.jobs},           {"seed", r.seed}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigurationError("cannot write " + path.string());
  os << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump() + "\n"); }

std::string series_csv(const GrowthSeries& s) {
  std::ostringstream os;
  s.write_csv(os);
  return os.str();
}

Json estimate_json(const EntropyEstimate& e) {
  return Json{{"value_nats", e.value},         {"value_bits", e.value_bits()}, {"stderr", e.slope_stderr},
              {"epsilon", e.params.epsilon},   {"n_min", e.params.n_min},      {"n_max", e.params.n_max},
              {"grid_size", e.params.grid_size}};
}

BowenParams bowen_params(const Resolved& r, double eps) {
  BowenParams p;
  p.epsilon = eps;
  p.n_min = r.n_min;
  p.n_max = r.n_max;
  p.grid_size = r.grid_size;
  p.validate();
  return p;
}

// Cells run on up to `jobs` threads; each returns its stdout text, printed
// afterwards in cell order. The first failing cell (by index) is rethrown.
struct Cell {
  std::string label;
  std::function<std::string()> body;
};

std::vector<std::string> run_cells(const std::vector<Cell>& cells, int jobs) {
  std::vector<std::string> text(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  const auto work = [&](std::size_t i) {
    try {
      text[i] = cells[i].body();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < cells.size(); i += static_cast<std::size_t>(workers))
          work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return text;
}

std::vector<Cell> entropy_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double eps : r.epsilon) {
    const std::string stem = "entropy_eps=" + num(eps);
    cells.push_back({stem, [&r, eps, stem] {
                       const auto est = entropy_estimate(r.system, bowen_params(r, eps));
                       write_text(r.out / (stem + ".csv"), series_csv(est.series));
                       Json j{{"command", "entropy"}, {"system", r.system_name}};
                       j.update(estimate_json(est));
                       write_json(r.out / (stem + ".json"), j);
                       return "entropy eps=" + num(eps) + " value_nats=" + fixed(est.value, 6) +
                              " value_bits=" + fixed(est.value_bits(), 6) + " stderr=" + fixed(est.slope_stderr, 6) +
                              "\n";
                     }});
  }
  return cells;
}

std::vector<Cell> pseudo_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double eps : r.epsilon)
    for (double alpha : r.alpha) {
      const std::string stem = "pseudo-entropy_eps=" + num(eps) + "_alpha=" + num(alpha);
      cells.push_back({stem, [&r, eps, alpha, stem] {
                         const auto est = pseudo_entropy(r.system, PseudoParams{bowen_params(r, eps), alpha});
                         const auto blocks = pseudo_entropy(
                             r.system, PseudoParams{bowen_params(r, eps), alpha, PseudoCount::Blocks});
                         write_text(r.out / (stem + ".csv"), series_csv(est.series));
                         write_text(r.out / (stem + "_blocks.csv"), series_csv(blocks.series));
                         Json j{{"command", "pseudo-entropy"}, {"system", r.system_name}, {"alpha", alpha}};
                         j.update(estimate_json(est));
                         j["blocks_value_nats"] = blocks.value;
                         write_json(r.out / (stem + ".json"), j);
                         return "pseudo-entropy eps=" + num(eps) + " alpha=" + num(alpha) +
                                " value_nats=" + fixed(est.value, 6) + "\n";
                       }});
    }
  return cells;
}

std::vector<Cell> periodic_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double alpha : r.alpha) {
    const std::string stem = "periodic-entropy_alpha=" + num(alpha);
    cells.push_back({stem, [&r, alpha, stem] {
                       const Grid grid(r.grid_size);
                       const auto res = periodic_pseudo_entropy(r.system, alpha, grid, r.n_min, r.n_max);
                       write_text(r.out / (stem + ".csv"), series_csv(res.estimate.series));
                       Json j{{"command", "periodic-entropy"}, {"system", r.system_name}, {"alpha", alpha}};
                       j.update(estimate_json(res.estimate));
                       j["spectral_radius"] = res.spectral_radius;
                       j["iterations"] = res.iterations;
                       j["trace_regression"] = res.trace_regression;
                       j["chain_transitive"] = res.chain_transitive;
                       j["warnings"] = res.warnings;
                       write_json(r.out / (stem + ".json"), j);
                       std::string text = "periodic-entropy alpha=" + num(alpha) + " value_nats=" +
                                          fixed(res.estimate.value, 6) + " rho=" + fixed(res.spectral_radius, 6) +
                                          " trace_regression=" + fixed(res.trace_regression, 6) + "\n";
                       for (const auto& w : res.warnings) text += "  warning: " + w + "\n";
                       return text;
                     }});
  }
  return cells;
}

std::vector<Cell> recurrence_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double alpha : r.alpha) {
    const std::string stem = "recurrence_alpha=" + num(alpha);
    cells.push_back({stem, [&r, alpha, stem] {
                       const Grid grid(r.grid_size);
                       const auto rep = recurrence_report(r.system, alpha, grid);
                       Json j{{"command", "recurrence"},
                              {"system", r.system_name},
                              {"alpha", alpha},
                              {"grid_size", r.grid_size},
                              {"chain_recurrent", encode_node_ranges(rep.chain_recurrent_nodes)},
                              {"chain_recurrent_count", rep.chain_recurrent_nodes.size()},
                              {"scc_count", rep.scc_count},
                              {"transitive", rep.transitive}};
                       write_json(r.out / (stem + ".json"), j);
                       if (r.system.is_periodic()) {
                         for (long k = 1; k <= r.system.period(); ++k) {
                           std::ostringstream os;
                           write_edge_list(os, build_transition_graph(r.system, k, alpha, grid));
                           write_text(r.out / (stem + "_step=" + std::to_string(k) + ".edges"), os.str());
                         }
                       }
                       return "recurrence alpha=" + num(alpha) +
                              " chain_recurrent=" + std::to_string(rep.chain_recurrent_nodes.size()) + "/" +
                              std::to_string(r.grid_size) + " scc=" + std::to_string(rep.scc_count) +
                              " transitive=" + (rep.transitive ? "true" : "false") + "\n";
                     }});
  }
  return cells;
}

std::vector<Cell> mixing_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double eps : r.epsilon)
    for (double delta : r.delta) {
      const std::string stem = "mixing-time_eps=" + num(eps) + "_delta=" + num(delta);
      cells.push_back({stem, [&r, eps, delta, stem] {
                         const Grid grid(r.grid_size);
                         const auto m =
                             chain_mixing_time(r.system, eps, delta, grid, default_confirm_horizon(r.system));
                         Json j{{"command", "mixing-time"},
                                {"system", r.system_name},
                                {"epsilon", eps},
                                {"delta", delta},
                                {"grid_size", r.grid_size},
                                {"value", m.value},
                                {"witness_node", m.per_point_max_witness},
                                {"confirm_horizon", m.confirm_horizon}};
                         write_json(r.out / (stem + ".json"), j);
                         return "mixing-time eps=" + num(eps) + " delta=" + num(delta) +
                                " value=" + std::to_string(m.value) + "\n";
                       }});
    }
  return cells;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

std::vector<long> fix_lengths(const MapSequence& F, long n_max) {
  std::vector<long> out;
  const long q = F.period();
  for (long n = q; n <= std::max(n_max, 4 * q); n += q) out.push_back(n);
  return out;
}

std::string run_bounds(const Resolved& r) {
  const Grid grid(r.grid_size);
  const double c = lipschitz_constant(r.system);
  std::ostringstream table;
  table << pad("fixture", 20) << pad("c", 8) << pad("delta", 8) << pad("eps", 8) << pad("m_measured", 12)
        << pad("m_bound", 10) << "ratio\n";

  struct Row {
    double delta, eps;
    long measured;
    double bound;
  };
  std::vector<std::pair<double, double>> pairs;
  for (double delta : r.delta)
    for (double eps : r.epsilon)
      if (eps <= delta && delta <= 0.5) pairs.emplace_back(delta, eps);
  std::vector<Row> rows(pairs.size());
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    cells.push_back({"", [&, i] {
                       const auto [delta, eps] = pairs[i];
                       const auto m = chain_mixing_time(r.system, eps, delta, grid, default_confirm_horizon(r.system));
                       const double b = c >= 1.0 ? mixing_time_lower_bound(c, 1.0, delta, eps) : 0.0;
                       rows[i] = {delta, eps, m.value, b};
                       return std::string();
                     }});
  run_cells(cells, r.jobs);

  Json jrows = Json::array();
  for (const auto& row : rows) {
    const bool has_ratio = row.bound > 0.0;
    table << pad(r.system_name, 20) << pad(fixed(c, 4), 8) << pad(num(row.delta), 8) << pad(num(row.eps), 8)
          << pad(std::to_string(row.measured), 12) << pad(fixed(row.bound, 4), 10)
          << (has_ratio ? fixed(static_cast<double>(row.measured) / row.bound, 4) : std::string("-")) << "\n";
    Json jr{{"kind", to_string(BoundKind::MixingTimeLB)},
            {"value", row.bound},
            {"inputs", {{"c", c}, {"D", 1.0}, {"delta", row.delta}, {"epsilon", row.eps}}},
            {"m_measured", row.measured}};
    jrows.push_back(jr);
  }

  Json elb{{"kind", to_string(BoundKind::EntropyLB)}};
  try {
    const auto rep = entropy_lower_bound(r.system, r.delta, r.epsilon.front(), grid);
    elb["value"] = rep.value;
    elb["inputs"] = rep.inputs;
    table << "entropy lower bound: " << fixed(rep.value, 6) << " (d' = " << fixed(rep.inputs.at("d_prime"), 4)
          << ")\n";
  } catch (const NotChainMixing& e) {
    elb["value"] = nullptr;
    elb["warning"] = e.what();
    table << "entropy lower bound: not applicable (" << e.what() << ")\n";
  }

  Json fix{{"kind", to_string(BoundKind::FixGrowth)}};
  if (r.system.is_periodic()) {
    try {
      const auto lengths = fix_lengths(r.system, r.n_max);
      const auto est = fix_growth_entropy(r.system, lengths);
      fix["value"] = est.value;
      fix["inputs"] = {{"n_min", lengths.front()}, {"n_max", lengths.back()}};
      write_text(r.out / "bounds_fix_growth.csv", series_csv(est.series));
      table << "fixed-point growth entropy: " << fixed(est.value, 6) << "\n";
    } catch (const NonIsolatedFixedPoints& e) {
      fix["value"] = nullptr;
      fix["warning"] = e.what();
      table << "fixed-point growth entropy: not applicable (" << e.what() << ")\n";
    }
  } else {
    fix["value"] = nullptr;
    fix["warning"] = "finite sequence";
  }

  write_json(r.out / "bounds.json", Json{{"command", "bounds"},
                                         {"system", r.system_name},
                                         {"grid_size", r.grid_size},
                                         {"mixing_time", jrows},
                                         {"entropy_lower_bound", elb},
                                         {"fix_growth", fix}});
  write_text(r.out / "bounds.txt", table.str());
  return table.str();
}

// Seeded alpha-pseudo-orbit on the grid: random start node, then a random
// target from each row. Raw engine output keeps the stream portable.
PseudoOrbit random_pseudo_orbit(const MapSequence& F, double alpha, const Grid& grid, long length,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PseudoOrbit po;
  po.alpha = alpha;
  po.start_step = 1;
  int node = static_cast<int>(rng() % static_cast<std::uint64_t>(grid.size()));
  po.nodes.push_back(node);
  for (long k = 1; k < length; ++k) {
    const auto g = build_transition_graph(F, k, alpha, grid);
    const auto& t = g.targets(node);
    node = t.lo + static_cast<int>(rng() % static_cast<std::uint64_t>(t.size()));
    po.nodes.push_back(node);
  }
  return po;
}

long shadow_length(const Resolved& r) {
  long len = r.n_max + 1;
  if (!r.system.is_periodic()) len = std::min(len, *r.system.horizon() + 1);
  return len;
}

std::vector<Cell> shadowing_cells(const Resolved& r) {
  std::vector<Cell> cells;
  for (double eps : r.epsilon)
    for (double alpha : r.alpha) {
      const std::string stem = "shadowing_eps=" + num(eps) + "_alpha=" + num(alpha);
      cells.push_back({stem, [&r, eps, alpha, stem] {
                         const Grid grid(r.grid_size);
                         const auto po = random_pseudo_orbit(r.system, alpha, grid, shadow_length(r), r.seed);
                         std::string csv = "k,node,x\n";
                         for (std::size_t k = 0; k < po.nodes.size(); ++k)
                           csv += std::to_string(k) + "," + std::to_string(po.nodes[k]) + "," +
                                  num(grid.center(po.nodes[k])) + "\n";
                         write_text(r.out / (stem + ".csv"), csv);
                         const auto tr = shadowing_trace(r.system, po, eps, grid);
                         Json j{{"command", "shadowing"}, {"system", r.system_name}, {"epsilon", eps},
                                {"alpha", alpha},         {"seed", r.seed},           {"length", po.nodes.size()}};
                         if (tr) {
                           j["found"] = true;
                           j["point"] = tr->point;
                           j["point_exact"] = tr->point_exact;
                           j["max_deviation"] = tr->max_deviation;
                         } else {
                           j["found"] = false;
                         }
                         write_json(r.out / (stem + ".json"), j);
                         return "shadowing eps=" + num(eps) + " alpha=" + num(alpha) +
                                (tr ? " point=" + tr->point_exact + " max_deviation=" + num(tr->max_deviation)
                                    : std::string(" no tracing orbit")) +
                                "\n";
                       }});
    }
  return cells;
}

struct Check {
  std::string name;
  std::string status;  // pass, fail, skip, info
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string note;
};

std::vector<Check> verify_checks(const Resolved& r) {
  const Grid grid(r.grid_size);
  const double eps = r.epsilon.front();
  const double alpha = r.alpha.front();
  const auto params = bowen_params(r, eps);
  std::vector<Check> checks;
  const auto close = [&](std::string name, double a, double b, double tol, std::string note = {}) {
    checks.push_back({std::move(name), std::abs(a - b) <= tol ? "pass" : "fail", a, b, tol, std::move(note)});
  };

  const double h = entropy_estimate(r.system, params).value;
  const double hp = pseudo_entropy(r.system, PseudoParams{params, alpha}).value;
  close("pseudo-entropy = entropy", hp, h, 0.15);

  if (r.system.is_periodic()) {
    const auto per = periodic_pseudo_entropy(r.system, alpha, grid, kTraceMin, kTraceMax);
    close("spectral value = trace regression", per.estimate.value, per.trace_regression, 0.05,
          "n in [" + std::to_string(kTraceMin) + ", " + std::to_string(kTraceMax) + "]");
    checks.push_back({"periodic <= pseudo-entropy", per.estimate.value <= hp + 0.05 ? "pass" : "fail",
                      per.estimate.value, hp, 0.05, "upper tolerance only"});
    if (per.chain_transitive) {
      close("periodic-pseudo-entropy = entropy", per.estimate.value, h, 0.15);
    } else {
      checks.push_back({"periodic-pseudo-entropy = entropy", "skip", per.estimate.value, h, 0.15,
                        "not chain transitive"});
    }
  } else {
    checks.push_back({"periodic-pseudo-entropy = entropy", "skip", 0, h, 0.15, "finite sequence"});
  }

  const double c = lipschitz_constant(r.system);
  for (double delta : {0.02, 0.05, 0.1})
    for (double e : {0.01, 0.02}) {
      if (!(e < delta)) continue;
      const std::string name = "mixing-time bound d=" + num(delta) + " e=" + num(e);
      if (c < 1.0) {
        checks.push_back({name, "skip", 0, 0, 1, "contraction"});
        continue;
      }
      const double bound = mixing_time_lower_bound(c, 1.0, delta, e);
      try {
        const auto m = chain_mixing_time(r.system, e, delta, grid, default_confirm_horizon(r.system));
        const double measured = static_cast<double>(m.value);
        checks.push_back({name, measured >= bound - 1.0 ? "pass" : "fail", measured, bound, 1.0, "m >= bound - 1"});
      } catch (const NotChainMixing&) {
        checks.push_back({name, "skip", 0, bound, 1.0, "not chain mixing"});
      }
    }

  try {
    const std::vector<double> deltas{0.01, 0.02, 0.05};
    const auto lb = entropy_lower_bound(r.system, deltas, 0.01, grid);
    checks.push_back({"entropy lower bound <= entropy", lb.value <= h + 0.1 ? "pass" : "fail", lb.value, h, 0.1,
                      "upper tolerance only"});
  } catch (const NotChainMixing&) {
    checks.push_back({"entropy lower bound <= entropy", "skip", 0, h, 0.1, "not mixing"});
  }

  std::vector<double> cr_points;
  for (int i : chain_recurrent_set(r.system, alpha, grid)) cr_points.push_back(grid.center(i));
  if (cr_points.empty()) {
    checks.push_back({"entropy on chain recurrent set", "fail", 0, h, 0.1, "empty chain recurrent set"});
  } else {
    const double hcr = entropy_estimate(r.system, params, cr_points).value;
    close("entropy on chain recurrent set", hcr, h, 0.1,
          std::to_string(cr_points.size()) + " of " + std::to_string(r.grid_size) + " nodes");
  }

  const auto po = random_pseudo_orbit(r.system, alpha, grid, shadow_length(r), r.seed);
  const auto tr = shadowing_trace(r.system, po, eps, grid);
  checks.push_back({"shadowing (seeded)", "info", tr ? tr->max_deviation : -1.0, eps, 0.0,
                    tr ? "traced by " + tr->point_exact : "no tracing orbit"});
  return checks;
}

int run_verify(const Resolved& r, std::ostream& out) {
  const auto checks = verify_checks(r);
  std::ostringstream table;
  table << pad("check", 36) << pad("status", 8) << pad("measured", 12) << pad("reference", 12) << pad("tol", 8)
        << "note\n";
  Json jchecks = Json::array();
  bool ok = true;
  for (const auto& ch : checks) {
    ok = ok && ch.status != "fail";
    table << pad(ch.name, 36) << pad(ch.status, 8) << pad(fixed(ch.measured, 6), 12)
          << pad(fixed(ch.reference, 6), 12) << pad(num(ch.tolerance), 8) << ch.note << "\n";
    jchecks.push_back(Json{{"name", ch.name},
                           {"status", ch.status},
                           {"measured", ch.measured},
                           {"reference", ch.reference},
                           {"tolerance", ch.tolerance},
                           {"note", ch.note}});
  }
  table << (ok ? "all checks passed\n" : "verification FAILED\n");
  write_text(r.out / "verify.txt", table.str());
  write_json(r.out / "verify.json",
             Json{{"command", "verify"}, {"system", r.system_name}, {"ok", ok}, {"checks", jchecks}});
  out << table.str();
  return ok ? 0 : 1;
}

int execute(const std::string& command, const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = resolve(command, cfg);
  fs::create_directories(r.out);

  int status = 0;
  if (command == "verify") {
    status = run_verify(r, out);
  } else if (command == "bounds") {
    out << run_bounds(r);
  } else {
    std::vector<Cell> cells;
    if (command == "entropy") cells = entropy_cells(r);
    else if (command == "pseudo-entropy") cells = pseudo_cells(r);
    else if (command == "periodic-entropy") cells = periodic_cells(r);
    else if (command == "recurrence") cells = recurrence_cells(r);
    else if (command == "mixing-time") cells = mixing_cells(r);
    else if (command == "shadowing") cells = shadowing_cells(r);
    else throw ConfigurationError("unknown command '" + command + "'");
    for (const auto& t : run_cells(cells, r.jobs)) out << t;
  }

  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(r.out))
    if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  Json manifest{{"command", command}, {"config", config_json(r)}, {"tool_version", kToolVersion},
                {"exit_status", status}, {"files", files}};
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.record_timing) manifest["wall_time_s"] = wall;
  write_json(r.out / "manifest.json", manifest);
  out << "wall time " << fixed(wall, 2) << " s\n";
  return status;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"entropy",     "pseudo-entropy", "periodic-entropy", "recurrence",
                                             "mixing-time", "bounds",         "shadowing",        "verify"};
  return list;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return execute(command, cfg, out);
  } catch (const NotChainMixing& e) {
    err << "analysis error: " << e.what() << " (worst node " << e.worst_node() << ")\n";
    return 3;
  } catch (const NonIsolatedFixedPoints& e) {
    err << "analysis error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    err << "analysis error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // DomainError, IndexError, ConfigurationError, ValidationError, ...
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
}

std::pair<long, long> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigurationError("--n expects A..B, got '" + text + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const long lo = std::stol(a, &used_a), hi = std::stol(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing characters");
    return {lo, hi};
  } catch (const std::exception&) {
    throw ConfigurationError("--n expects A..B, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto slash = tok.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
      } else {
        const std::string p = tok.substr(0, slash), q = tok.substr(slash + 1);
        std::size_t up = 0, uq = 0;
        const double num_ = std::stod(p, &up), den = std::stod(q, &uq);
        if (up != p.size() || uq != q.size() || den == 0.0) throw std::invalid_argument("bad fraction");
        out.push_back(num_ / den);
      }
    } catch (const std::exception&) {
      throw ConfigurationError("bad number '" + tok + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigurationError("empty list");
  return out;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy, pseudo-orbit and chain-recurrence analysis of non-autonomous interval maps", "ndsent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  std::string grid, alpha, eps, delta, nrange, jobs, seed, outdir;
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--system", cfg.system, "fixture name or system file")->envname("NDSENT_SYSTEM");
    sub->add_option("--grid", grid, "grid size N")->envname("NDSENT_GRID");
    sub->add_option("--alpha", alpha, "pseudo-orbit tolerance (comma list)")->envname("NDSENT_ALPHA");
    sub->add_option("--eps", eps, "epsilon (comma list)")->envname("NDSENT_EPS");
    sub->add_option("--delta", delta, "delta (comma list)")->envname("NDSENT_DELTA");
    sub->add_option("--n", nrange, "orbit length window A..B")->envname("NDSENT_N");
    sub->add_option("--jobs", jobs, "parallel sweep cells")->envname("NDSENT_JOBS");
    sub->add_option("--seed", seed, "random seed")->envname("NDSENT_SEED");
    sub->add_option("--out", outdir, "output directory")->envname("NDSENT_OUT");
    sub->add_flag("--record-timing", cfg.record_timing, "store wall time in the manifest");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (!grid.empty()) cfg.grid_size = static_cast<int>(std::stol(grid));
    if (!alpha.empty()) cfg.alpha = parse_list(alpha);
    if (!eps.empty()) cfg.epsilon = parse_list(eps);
    if (!delta.empty()) cfg.delta = parse_list(delta);
    if (!nrange.empty()) std::tie(cfg.n_min, cfg.n_max) = parse_n_range(nrange);
    if (!jobs.empty()) cfg.jobs = static_cast<int>(std::stol(jobs));
    if (!seed.empty()) cfg.seed = std::stoull(seed);
    if (!outdir.empty()) cfg.output_dir = outdir;
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), cfg, out, err);
}

}  // namespace nds::cli
