#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nds::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Empty lists and unset optionals take per-command defaults.
struct RunConfig {
  std::string system = "tent";
  std::optional<int> grid_size;
  std::vector<double> alpha;
  std::vector<double> epsilon;
  std::vector<double> delta;
  std::optional<long> n_min;
  std::optional<long> n_max;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string output_dir = "ndsent-out";
  bool record_timing = false;
};

const std::vector<std::string>& commands();

/// Runs one command and writes its artifacts to cfg.output_dir. Returns the
/// process exit status: 0 ok, 1 verification failure, 2 configuration error,
/// 3 analysis error.
int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line front end (flags, NDSENT_* environment overrides).
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

/// "A..B" -> (A, B).
std::pair<long, long> parse_n_range(const std::string& text);

/// Comma-separated reals, fractions allowed.
std::vector<double> parse_list(const std::string& text);

}  // namespace nds::cli
