#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptqm/experiments.hpp"
#include "ptqm/sweep.hpp"

namespace ptqm {

using Json = nlohmann::ordered_json;

/// Invalid command-line or programmatic configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // nosignal | entangle | chsh | coperator | sweep
  double alpha_a = kPi / 6.0;
  std::optional<double> alpha_b;
  std::string prescription = "both";  // cpt | hilbert | both
  std::string initial = "entangled";  // entangled | separable
  std::optional<double> zeta;
  std::optional<GridSpec> zeta_sweep;   // chsh curve tabulation
  GridSpec grid{0.0, 1.4, 15};          // sweep command grid over alpha
  std::string experiment = "nosignal";  // sweep target
  std::string format = "json";          // json | csv
  std::optional<std::string> output_path;
  std::uint64_t seed = 12345;
};

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct Report {
  Json doc;  // { command, config, results, checks }
  std::vector<Check> checks;
  bool all_pass() const;
};

/// "start:stop:steps".
GridSpec parse_grid(const std::string& text);

Report run_command(const RunConfig& cfg);

std::string render(const Report& report, const std::string& format);
std::string to_csv(const Report& report);

/// Applies PTQM_OUTPUT_DIR to a relative output path.
std::string resolve_output_path(const std::string& path);

const char* to_string(AliceChoice c);

}  // namespace ptqm
