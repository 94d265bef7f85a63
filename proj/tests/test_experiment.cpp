#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crystal/experiment.hpp"

using namespace crystal;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig = R"(# tiny smoke config
lattice line
N 16 32
M 32
T 0.02
replicas 2
seed 9
snapshots 3
eps 0.2
K 2
H_envelope 0.5 0
H_mode 1 1 0
rho0_mode 0 1/2 0
rho0_mode 1 0 0.3
J_mode 1 1 0
)";

}  // namespace

TEST_CASE("config parsing") {
  fs::path p = write_temp("crystal_cfg_parse.cfg", kSmallConfig);
  ExperimentConfig cfg = load_config(p.string());
  CHECK(cfg.lattice == "line");
  CHECK(cfg.N_list == std::vector<int>{16, 32});
  CHECK(cfg.M == 32);
  CHECK(cfg.T == doctest::Approx(0.02));
  CHECK(cfg.replicas == 2);
  CHECK(cfg.master_seed == 9);
  CHECK(cfg.snapshots == 3);
  CHECK(cfg.K == 2);
  CHECK(cfg.H.c0 == doctest::Approx(0.5));
  REQUIRE(cfg.H.H0.modes().size() == 1);
  CHECK(cfg.rho0.modes().size() == 2);
  CHECK(cfg.rho0.modes()[0].a == 0.5);  // parsed from "1/2", bit-exact
  CHECK(cfg.J_set.size() == 1);
  CHECK(cfg.snapshot_times().back() == 0.02);

  fs::path bad = write_temp("crystal_cfg_bad.cfg", "lattice line\nfoo 3\n");
  CHECK_THROWS_WITH_AS(load_config(bad.string()),
                       doctest::Contains("unknown key foo"),
                       std::runtime_error);
  fs::path neg = write_temp("crystal_cfg_neg.cfg", "lattice line\nM 1\n");
  CHECK_THROWS_AS(load_config(neg.string()), std::invalid_argument);
}

TEST_CASE("experiment hash: stable and sensitive") {
  fs::path p = write_temp("crystal_cfg_hash.cfg", kSmallConfig);
  ExperimentConfig a = load_config(p.string());
  ExperimentConfig b = load_config(p.string());
  CHECK(a.hash() == b.hash());
  b.rho0 = FourierField(1);
  b.rho0.add_mode(Eigen::VectorXi::Zero(1), 0.5 + 1e-15, 0.0);
  Eigen::VectorXi k(1);
  k << 1;
  b.rho0.add_mode(k, 0.0, 0.3);
  CHECK(a.hash() != b.hash());  // hex-float serialization sees every bit
  b = a;
  b.master_seed = 10;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("run_experiment: deterministic bundles with a complete manifest") {
  fs::path p = write_temp("crystal_cfg_run.cfg", kSmallConfig);
  ExperimentConfig cfg = load_config(p.string());
  cfg.workers = 2;
  fs::path dir_a = fs::temp_directory_path() / "crystal_run_a";
  fs::path dir_b = fs::temp_directory_path() / "crystal_run_b";
  cfg.out_dir = dir_a.string();
  RunResult a = run_experiment(cfg);
  REQUIRE_FALSE(a.failed);
  cfg.out_dir = dir_b.string();
  RunResult b = run_experiment(cfg);
  REQUIRE_FALSE(b.failed);
  CHECK(a.hash == b.hash);
  REQUIRE(a.files == b.files);
  CHECK(a.files == std::vector<std::string>{"realization.txt", "pde.csv",
                                            "trajectories_N16.csv",
                                            "trajectories_N32.csv",
                                            "errors.csv"});
  for (const std::string& f : a.files) {
    CAPTURE(f);
    CHECK(slurp(dir_a / f) == slurp(dir_b / f));
  }
  // manifest lists every file with its digest
  std::string manifest = slurp(fs::path(cfg.out_dir) / "manifest.txt");
  CHECK(manifest.find("status ok") != std::string::npos);
  for (const std::string& f : a.files)
    CHECK(manifest.find("file " + f + " ") != std::string::npos);
}

TEST_CASE("run_experiment: failures name the stage, manifest marks FAILED") {
  fs::path lat = write_temp("crystal_bad_lattice.lat",
                            "dimension 1\nvertices 1\nedge 0 0 0\nbasis 1\n");
  ExperimentConfig cfg;
  cfg.lattice = lat.string();
  cfg.N_list = {8};
  cfg.T = 0.01;
  cfg.M = 16;
  cfg.replicas = 1;
  cfg.snapshots = 2;
  cfg.rho0.add_mode(Eigen::VectorXi::Zero(1), 0.5, 0.0);
  cfg.out_dir = (fs::temp_directory_path() / "crystal_run_fail").string();
  RunResult r = run_experiment(cfg);
  CHECK(r.failed);
  CHECK(r.failed_stage.find("harmonic") != std::string::npos);
  // the validator names the offending edge
  CHECK(r.failed_stage.find("edge 0") != std::string::npos);
  std::string manifest = slurp(fs::path(cfg.out_dir) / "manifest.txt");
  CHECK(manifest.find("FAILED") != std::string::npos);
}

TEST_CASE("lattice files round-trip through the loader") {
  fs::path lat = write_temp("crystal_hex_copy.lat",
                            "# hexagonal written out by hand\n"
                            "dimension 2\nvertices 2\n"
                            "edge 0 1 0 0\nedge 0 1 1 0\nedge 0 1 1 -1\n"
                            "basis sqrt3 0\nbasis sqrt3/2 3/2\n");
  LatticeSpec spec = load_lattice_file(lat.string());
  CHECK(spec.graph.num_vertices() == 2);
  CHECK(spec.graph.num_edges() == 6);
  RealizationX r = exact_realization(spec);
  CHECK(r.diffusion(0, 0) == Exact(Rational(3, 8)));
  CHECK(r.diffusion(1, 1) == Exact(Rational(3, 8)));

  fs::path dup = write_temp("crystal_missing_basis.lat",
                            "dimension 1\nvertices 1\nedge 0 0 1\n");
  CHECK_THROWS_AS(load_lattice_file(dup.string()), std::runtime_error);
}

TEST_CASE("verify_paper_tables all pass") {
  auto checks = verify_paper_tables();
  CHECK(checks.size() == 9);
  int divergences = 0;
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    if (c.documented_divergence) ++divergences;
  }
  CHECK(divergences == 2);  // both sides of the line2 positions story
}

TEST_CASE("realization report carries the exact data") {
  std::string rep = realization_report(catalog_lattice("kagome"));
  CHECK(rep.find("vertices 3") != std::string::npos);
  CHECK(rep.find("oriented_edges 12") != std::string::npos);
  CHECK(rep.find("3/8") != std::string::npos);
  CHECK(rep.find("harmonic yes") != std::string::npos);
  std::string rep2 = realization_report(catalog_lattice("line2"));
  CHECK(rep2.find("harmonic no") != std::string::npos);
  CHECK(rep2.find("positions_overridden yes") != std::string::npos);
}

TEST_CASE("replacement diagnostic runner writes its table") {
  ExperimentConfig cfg;
  cfg.lattice = "square";
  cfg.N_list = {8};
  cfg.M = 16;
  cfg.T = 0.01;
  cfg.replicas = 2;
  cfg.snapshots = 2;
  cfg.eps = 0.15;
  cfg.K = 1;
  cfg.rho0.add_mode(Eigen::VectorXi::Zero(2), 0.5, 0.0);
  cfg.out_dir = (fs::temp_directory_path() / "crystal_repl").string();
  RunResult r = run_replacement_diagnostic(cfg);
  REQUIRE_FALSE(r.failed);
  std::string csv = slurp(fs::path(cfg.out_dir) / "replacement.csv");
  CHECK(csv.find("occupation") != std::string::npos);
  CHECK(csv.find("edge_product") != std::string::npos);
}
