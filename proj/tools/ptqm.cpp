#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptqm/report.hpp"

namespace {

// Exit codes: 0 success, 2 invalid config, 3 numerical-check failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailure = 3;

void add_common_options(CLI::App* cmd, ptqm::RunConfig& cfg, std::string& grid_text,
                        std::string& zeta_sweep_text) {
  cmd->add_option("--alpha,-a", cfg.alpha_a, "Non-Hermiticity angle for side A, radians");
  cmd->add_option("--alpha-b", [&cfg](const CLI::results_t& res) {
        cfg.alpha_b = std::stod(res[0]);
        return true;
      },
      "Non-Hermiticity angle for side B, radians (enables the two-sided system)");
  cmd->add_option("--prescription,-p", cfg.prescription, "cpt, hilbert, or both")
      ->check(CLI::IsMember({"cpt", "hilbert", "both"}));
  cmd->add_option("--initial", cfg.initial, "entangled or separable initial state")
      ->check(CLI::IsMember({"entangled", "separable"}));
  cmd->add_option("--zeta", [&cfg](const CLI::results_t& res) {
        cfg.zeta = std::stod(res[0]);
        return true;
      },
      "CHSH strategy angle, radians");
  cmd->add_option("--sweep-zeta", zeta_sweep_text, "CHSH curve grid start:stop:steps");
  cmd->add_option("--grid", grid_text, "Alpha grid start:stop:steps for the sweep command");
  cmd->add_option("--experiment", cfg.experiment, "Sweep target")
      ->check(CLI::IsMember({"nosignal", "entangle", "chsh", "coperator"}));
  cmd->add_option("--format,-f", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output,-o", [&cfg](const CLI::results_t& res) {
        cfg.output_path = res[0];
        return true;
      },
      "Output file (relative paths honor PTQM_OUTPUT_DIR); stdout when absent");
  cmd->add_option("--seed", cfg.seed, "Seed for the randomized consistency checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric two-qubit experiments with the CPT inner product"};
  app.require_subcommand(1);

  ptqm::RunConfig cfg;
  std::string grid_text, zeta_sweep_text;
  const std::pair<const char*, const char*> commands[] = {
      {"nosignal", "Joint outcome tables and the signaling deviation, per prescription"},
      {"entangle", "Reduced density, eigenvalues, and entanglement entropy"},
      {"chsh", "CHSH game: winning probability, optimum, marginal table"},
      {"coperator", "C operator with its algebraic consistency checks"},
      {"sweep", "Any experiment tabulated across an alpha grid"},
  };
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    add_common_options(sub, cfg, grid_text, zeta_sweep_text);
  }

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!grid_text.empty()) cfg.grid = ptqm::parse_grid(grid_text);
    if (!zeta_sweep_text.empty()) cfg.zeta_sweep = ptqm::parse_grid(zeta_sweep_text);

    const ptqm::Report report = ptqm::run_command(cfg);
    const std::string text = ptqm::render(report, cfg.format);
    if (cfg.output_path) {
      const std::string path = ptqm::resolve_output_path(*cfg.output_path);
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitConfig;
      }
      out << text;
    } else {
      std::cout << text;
    }
    if (!report.all_pass()) {
      std::cerr << "error: numerical check failed\n";
      for (const ptqm::Check& c : report.checks) {
        if (!c.pass) std::cerr << "  " << c.name << " = " << c.value << "\n";
      }
      return kExitCheckFailure;
    }
    return kExitOk;
  } catch (const ptqm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
