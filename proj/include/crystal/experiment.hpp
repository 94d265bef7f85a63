#ifndef CRYSTAL_EXPERIMENT_HPP
#define CRYSTAL_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "crystal/catalog.hpp"
#include "crystal/fourier_field.hpp"
#include "crystal/observables.hpp"

namespace crystal {

/// Full description of one hydrodynamic-limit experiment; serializes
/// canonically so the experiment hash ties every output file together.
struct ExperimentConfig {
  std::string lattice = "square";
  std::vector<int> N_list;
  int M = 128;
  double T = 0.1;
  DriftSpec H;
  FourierField rho0;
  std::vector<FourierField> J_set;
  int replicas = 20;
  uint64_t master_seed = 1;
  int snapshots = 20;
  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";
  // replacement-diagnostic parameters
  double eps = 0.2;
  int K = 3;

  void validate() const;
  std::string canonical_serialization() const;
  uint64_t hash() const;
  std::vector<double> snapshot_times() const;
};

/// Parses the key-value config format (see README).  Unset N_list defaults
/// to {16,32,64} for d = 2 and {128,256,512} for d = 1 at run time.
ExperimentConfig load_config(const std::string& path);

struct RunResult {
  bool failed = false;
  std::string failed_stage;
  uint64_t hash = 0;
  std::vector<std::string> files;
};

/// Orchestrates: harmonic solve, per-N replicated simulation, PDE solve,
/// hydrodynamic error table; writes a result bundle with a manifest.
RunResult run_experiment(const ExperimentConfig& config);

/// Runs the replacement diagnostic for occupation and edge-product bundles
/// across the config's N list; writes a CSV to the output directory.
RunResult run_replacement_diagnostic(const ExperimentConfig& config);

struct PaperCheck {
  std::string name;
  std::string computed;
  std::string expected;
  bool pass = false;
  bool documented_divergence = false;
};

/// Recomputes the catalog diffusion matrices (and the stated non-harmonic
/// embeddings) in exact arithmetic and compares against the published
/// values.
std::vector<PaperCheck> verify_paper_tables();

/// Human-readable realization report (basis, positions, v(e), D, residuals),
/// exact where the lattice data is exact.
std::string realization_report(const LatticeSpec& spec);

uint64_t fnv1a(const std::string& data);

}  // namespace crystal

#endif
