// Command-line front end for the crystal lattice laboratory.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "crystal/experiment.hpp"
#include "crystal/pde.hpp"
#include "crystal/simulate.hpp"

using namespace crystal;

namespace {

struct CommonFlags {
  uint64_t seed = 0;
  bool seed_set = false;
  int replicas = 0;
  int workers = -1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "master seed")
      ->each([&](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--replicas", flags.replicas, "replica count");
  cmd->add_option("--workers", flags.workers, "parallel workers (0 = auto)");
  cmd->add_option("--out", flags.out, "output directory");
}

ExperimentConfig load_with_overrides(const std::string& path,
                                     const CommonFlags& flags) {
  ExperimentConfig cfg = load_config(path);
  if (flags.seed_set) cfg.master_seed = flags.seed;
  if (flags.replicas > 0) cfg.replicas = flags.replicas;
  if (flags.workers >= 0) cfg.workers = flags.workers;
  if (!flags.out.empty()) cfg.out_dir = flags.out;
  return cfg;
}

int report_run(const RunResult& result) {
  if (result.failed) {
    std::cerr << "error: " << result.failed_stage << "\n";
    return 1;
  }
  std::cout << "experiment_hash " << std::hex << result.hash << std::dec
            << "\n";
  for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crystal lattice exclusion-process laboratory"};
  app.require_subcommand(1);

  std::string lattice_arg, config_arg;
  CommonFlags flags;

  auto* solve_cmd =
      app.add_subcommand("solve-harmonic", "solve the periodic harmonic map");
  solve_cmd->add_option("lattice", lattice_arg, "catalog name or lattice file")
      ->required();

  auto* diff_cmd =
      app.add_subcommand("diffusion", "print the exact diffusion matrix");
  diff_cmd->add_option("lattice", lattice_arg)->required();

  auto* sim_cmd = app.add_subcommand("simulate", "run replicated trajectories");
  sim_cmd->add_option("config", config_arg)->required();
  add_common(sim_cmd, flags);

  auto* pde_cmd = app.add_subcommand("pde", "solve the limit equation");
  pde_cmd->add_option("config", config_arg)->required();
  add_common(pde_cmd, flags);

  auto* cmp_cmd = app.add_subcommand(
      "compare", "full pipeline: simulate, solve PDE, error table");
  cmp_cmd->add_option("config", config_arg)->required();
  add_common(cmp_cmd, flags);

  auto* paper_cmd = app.add_subcommand(
      "verify-paper", "recompute the published diffusion matrices exactly");

  auto* repl_cmd = app.add_subcommand("replacement-diagnostic",
                                      "local-average replacement diagnostic");
  repl_cmd->add_option("config", config_arg)->required();
  add_common(repl_cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      std::cout << realization_report(resolve_lattice(lattice_arg));
      return 0;
    }
    if (*diff_cmd) {
      RealizationX rx = exact_realization(resolve_lattice(lattice_arg));
      for (Eigen::Index i = 0; i < rx.diffusion.rows(); ++i) {
        for (Eigen::Index j = 0; j < rx.diffusion.cols(); ++j)
          std::cout << (j ? " " : "") << rx.diffusion(i, j).str();
        std::cout << "\n";
      }
      return 0;
    }
    if (*sim_cmd || *cmp_cmd) {
      ExperimentConfig cfg = load_with_overrides(config_arg, flags);
      return report_run(run_experiment(cfg));
    }
    if (*pde_cmd) {
      ExperimentConfig cfg = load_with_overrides(config_arg, flags);
      LatticeSpec spec = resolve_lattice(cfg.lattice);
      RealizationD realization = to_double(exact_realization(spec));
      std::vector<DensityGrid> grids =
          solve(realization, cfg.rho0, cfg.H, cfg.T, cfg.M,
                cfg.snapshot_times());
      std::cout << "t,mass\n";
      for (const auto& g : grids)
        std::cout << g.t << ',' << g.mass() << "\n";
      return 0;
    }
    if (*paper_cmd) {
      bool ok = true;
      for (const PaperCheck& c : verify_paper_tables()) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": computed ["
                  << c.computed << "] expected [" << c.expected << "]";
        if (c.documented_divergence) std::cout << " (documented divergence)";
        std::cout << "\n";
        if (!c.pass) ok = false;
      }
      return ok ? 0 : 2;
    }
    if (*repl_cmd) {
      ExperimentConfig cfg = load_with_overrides(config_arg, flags);
      return report_run(run_replacement_diagnostic(cfg));
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
