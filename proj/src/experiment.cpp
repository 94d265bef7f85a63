#include "crystal/experiment.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "crystal/pde.hpp"
#include "crystal/simulate.hpp"

namespace fs = std::filesystem;

namespace crystal {

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void ExperimentConfig::validate() const {
  if (M < 2) throw std::invalid_argument("M must be >= 2");
  if (T <= 0) throw std::invalid_argument("T must be positive");
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  if (snapshots < 1) throw std::invalid_argument("snapshots must be >= 1");
  for (int N : N_list)
    if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (K < 0) throw std::invalid_argument("K must be >= 0");
}

namespace {

std::string fmt_double(double x) {
  std::ostringstream ss;
  ss << std::hexfloat << x;
  return ss.str();
}

void serialize_field(std::ostringstream& ss, const std::string& tag,
                     const FourierField& f) {
  for (const auto& m : f.modes()) {
    ss << tag;
    for (int i = 0; i < m.k.size(); ++i) ss << ' ' << m.k(i);
    ss << ' ' << fmt_double(m.a) << ' ' << fmt_double(m.b) << '\n';
  }
}

}  // namespace

std::string ExperimentConfig::canonical_serialization() const {
  std::ostringstream ss;
  ss << "lattice " << lattice << "\nN";
  for (int n : N_list) ss << ' ' << n;
  ss << "\nM " << M << "\nT " << fmt_double(T) << "\nreplicas " << replicas
     << "\nseed " << master_seed << "\nsnapshots " << snapshots << "\neps "
     << fmt_double(eps) << "\nK " << K << "\n";
  ss << "H_envelope " << fmt_double(H.c0) << ' ' << fmt_double(H.c1) << '\n';
  serialize_field(ss, "H_mode", H.H0);
  serialize_field(ss, "rho0_mode", rho0);
  for (size_t j = 0; j < J_set.size(); ++j)
    serialize_field(ss, "J_mode", J_set[j]);
  return ss.str();
}

uint64_t ExperimentConfig::hash() const {
  return fnv1a(canonical_serialization());
}

std::vector<double> ExperimentConfig::snapshot_times() const {
  std::vector<double> times;
  for (int i = 1; i < snapshots; ++i)
    times.push_back(T * static_cast<double>(i) / snapshots);
  times.push_back(T);  // avoid a final time one ulp past the horizon
  return times;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ExperimentConfig cfg;
  cfg.J_set.clear();
  std::string line;
  int lineno = 0;
  int dim_hint = -1;
  auto parse_mode = [&](std::istringstream& ss, FourierField& field) {
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    if (toks.size() < 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": mode needs k..., a, b");
    int d = static_cast<int>(toks.size()) - 2;
    if (dim_hint < 0) dim_hint = d;
    Eigen::VectorXi k(d);
    for (int i = 0; i < d; ++i) k(i) = std::stoi(toks[i]);
    field.add_mode(k, parse_exact(toks[d]).to_double(),
                   parse_exact(toks[d + 1]).to_double());
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "lattice") {
      ss >> cfg.lattice;
    } else if (key == "N") {
      int n;
      cfg.N_list.clear();
      while (ss >> n) cfg.N_list.push_back(n);
    } else if (key == "M") {
      ss >> cfg.M;
    } else if (key == "T") {
      std::string t;
      ss >> t;
      cfg.T = parse_exact(t).to_double();
    } else if (key == "replicas") {
      ss >> cfg.replicas;
    } else if (key == "seed") {
      ss >> cfg.master_seed;
    } else if (key == "snapshots") {
      ss >> cfg.snapshots;
    } else if (key == "workers") {
      ss >> cfg.workers;
    } else if (key == "out") {
      ss >> cfg.out_dir;
    } else if (key == "eps") {
      std::string t;
      ss >> t;
      cfg.eps = parse_exact(t).to_double();
    } else if (key == "K") {
      ss >> cfg.K;
    } else if (key == "H_envelope") {
      std::string a, b;
      ss >> a >> b;
      cfg.H.c0 = parse_exact(a).to_double();
      cfg.H.c1 = parse_exact(b).to_double();
    } else if (key == "H_mode") {
      parse_mode(ss, cfg.H.H0);
    } else if (key == "rho0_mode") {
      parse_mode(ss, cfg.rho0);
    } else if (key == "J_mode") {
      FourierField J;
      parse_mode(ss, J);
      cfg.J_set.push_back(J);
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key " + key);
    }
  }
  cfg.validate();
  return cfg;
}

std::string realization_report(const LatticeSpec& spec) {
  std::ostringstream ss;
  RealizationX rx = exact_realization(spec);
  const QuotientGraph& g = spec.graph;
  ss << "lattice " << spec.name << "\ndimension " << g.dimension()
     << "\nvertices " << g.num_vertices() << "\noriented_edges "
     << g.num_edges() << "\n";
  ss << "basis";
  for (int j = 0; j < g.dimension(); ++j)
    for (int i = 0; i < g.dimension(); ++i) ss << ' ' << rx.basis(i, j).str();
  ss << "\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    ss << "position " << v;
    for (int c = 0; c < g.dimension(); ++c) ss << ' ' << rx.positions(v, c).str();
    ss << "\n";
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    ss << "v(" << e << ") " << g.edge(e).tail << "->" << g.edge(e).head;
    for (int c = 0; c < g.dimension(); ++c) ss << ' ' << rx.edge_vectors(e, c).str();
    ss << "\n";
  }
  ss << "diffusion";
  for (int i = 0; i < g.dimension(); ++i)
    for (int j = 0; j < g.dimension(); ++j) ss << ' ' << rx.diffusion(i, j).str();
  ss << "\n";
  ss << "max_residual " << max_residual(rx) << "\n";
  ss << "harmonic " << (max_residual(rx) <= 1e-10 ? "yes" : "no") << "\n";
  if (rx.overridden) ss << "positions_overridden yes\n";
  return ss.str();
}

namespace {

std::vector<int> effective_N_list(const ExperimentConfig& cfg,
                                  const LatticeSpec& spec) {
  if (!cfg.N_list.empty()) return cfg.N_list;
  return spec.graph.dimension() == 1 ? std::vector<int>{128, 256, 512}
                                     : std::vector<int>{16, 32, 64};
}

std::vector<TrajectoryRecorder> run_replicas(const ExperimentConfig& cfg,
                                             const ScalingMap& map) {
  const std::vector<double> times = cfg.snapshot_times();
  std::vector<TrajectoryRecorder> out(cfg.replicas);
  int workers = cfg.workers > 0
                    ? cfg.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      int r = next.fetch_add(1);
      if (r >= cfg.replicas) return;
      uint64_t seed = replica_seed(cfg.master_seed, r);
      Configuration init = sample_initial(cfg.rho0, map, seed);
      out[r] = simulate(init, map, cfg.H, cfg.T, seed + 1, times);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(workers, cfg.replicas); ++w)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

void write_file(const fs::path& p, const std::string& content,
                std::vector<std::pair<std::string, uint64_t>>& digests) {
  std::ofstream out(p);
  out << content;
  digests.emplace_back(p.filename().string(), fnv1a(content));
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunResult result;
  result.hash = cfg.hash();
  fs::create_directories(cfg.out_dir);
  std::vector<std::pair<std::string, uint64_t>> digests;
  std::string stage = "setup";
  std::ostringstream errors_csv;
  errors_csv << "hash,N,t,j,replica_mean,pde_integral,error_of_mean,"
                "mean_abs_error,stderr_of_mean\n";
  try {
    stage = "harmonic";
    LatticeSpec spec = resolve_lattice(cfg.lattice);
    RealizationX exact = exact_realization(spec);
    RealizationD realization = to_double(exact);
    std::vector<int> N_list = effective_N_list(cfg, spec);
    write_file(fs::path(cfg.out_dir) / "realization.txt",
               realization_report(spec), digests);

    stage = "pde";
    std::vector<DensityGrid> pde =
        solve(realization, cfg.rho0, cfg.H, cfg.T, cfg.M,
              cfg.snapshot_times());
    {
      std::ostringstream pde_csv;
      pde_csv << "# hash " << std::hex << result.hash << std::dec << " M "
              << cfg.M << "\n";
      pde_csv << "t";
      for (int i = 0; i < spec.graph.dimension(); ++i)
        pde_csv << ",y" << (i + 1);
      pde_csv << ",rho\n";
      pde_csv << std::setprecision(17);
      for (const DensityGrid& gsnap : pde) {
        if (gsnap.d == 1) {
          for (int i = 0; i < gsnap.M; ++i)
            pde_csv << gsnap.t << ',' << gsnap.node(i)(0) << ','
                    << gsnap.values(i) << "\n";
        } else {
          for (int i = 0; i < gsnap.M; ++i)
            for (int j = 0; j < gsnap.M; ++j)
              pde_csv << gsnap.t << ',' << gsnap.node(i, j)(0) << ','
                      << gsnap.node(i, j)(1) << ','
                      << gsnap.values(gsnap.index(i, j)) << "\n";
        }
      }
      write_file(fs::path(cfg.out_dir) / "pde.csv", pde_csv.str(), digests);
    }

    for (int N : N_list) {
      stage = "simulate N=" + std::to_string(N);
      ScaledGraph graph = build_scaled_graph(spec.graph, N);
      ScalingMap map(graph, realization);
      std::vector<TrajectoryRecorder> trajs = run_replicas(cfg, map);

      std::ostringstream traj_csv;
      traj_csv << "hash,replica,t,observable_id,value\n";
      traj_csv << std::setprecision(17);
      for (int r = 0; r < cfg.replicas; ++r)
        for (size_t s = 0; s < trajs[r].snapshots.size(); ++s)
          for (size_t j = 0; j < cfg.J_set.size(); ++j)
            traj_csv << std::hex << result.hash << std::dec << ',' << r << ','
                     << trajs[r].snapshot_times[s] << ',' << j << ','
                     << pair_field(cfg.J_set[j], trajs[r].snapshots[s], map)
                     << "\n";
      write_file(fs::path(cfg.out_dir) /
                     ("trajectories_N" + std::to_string(N) + ".csv"),
                 traj_csv.str(), digests);

      stage = "compare N=" + std::to_string(N);
      std::vector<HydroError> errs =
          hydrodynamic_error(trajs, pde, cfg.J_set, map);
      errors_csv << std::setprecision(17);
      for (const HydroError& e : errs)
        errors_csv << std::hex << result.hash << std::dec << ',' << N << ','
                   << e.t << ',' << e.j_index << ',' << e.replica_mean_pairing
                   << ',' << e.pde_integral << ',' << e.error_of_mean << ','
                   << e.mean_abs_error << ',' << e.stderr_of_mean << "\n";
    }
    write_file(fs::path(cfg.out_dir) / "errors.csv", errors_csv.str(), digests);
  } catch (const std::exception& ex) {
    result.failed = true;
    result.failed_stage = stage + ": " + ex.what();
  }

  std::ostringstream manifest;
  manifest << "experiment_hash " << std::hex << result.hash << std::dec << "\n";
  manifest << "master_seed " << cfg.master_seed << "\n";
  manifest << "replicas " << cfg.replicas << "\n";
  manifest << (result.failed ? "FAILED " + result.failed_stage : "status ok")
           << "\n";
  for (auto& [name, digest] : digests) {
    manifest << "file " << name << ' ' << std::hex << digest << std::dec
             << "\n";
    result.files.push_back(name);
  }
  {
    std::ofstream out(fs::path(cfg.out_dir) / "manifest.txt");
    out << manifest.str();
  }
  return result;
}

RunResult run_replacement_diagnostic(const ExperimentConfig& cfg) {
  cfg.validate();
  RunResult result;
  result.hash = cfg.hash();
  fs::create_directories(cfg.out_dir);
  std::vector<std::pair<std::string, uint64_t>> digests;
  std::string stage = "setup";
  try {
    LatticeSpec spec = resolve_lattice(cfg.lattice);
    RealizationD realization = to_double(exact_realization(spec));
    std::vector<int> N_list = effective_N_list(cfg, spec);
    std::ostringstream csv;
    csv << "hash,N,bundle,value\n" << std::setprecision(17);
    for (int N : N_list) {
      stage = "simulate N=" + std::to_string(N);
      ScaledGraph graph = build_scaled_graph(spec.graph, N);
      ScalingMap map(graph, realization);
      std::vector<TrajectoryRecorder> trajs = run_replicas(cfg, map);
      stage = "diagnostic N=" + std::to_string(N);
      const std::vector<std::pair<const char*, LocalFunctionBundle>> bundles =
          {{"occupation", {BundleKind::occupation, -1}},
           {"edge_product", {BundleKind::edge_product, 0}}};
      for (const auto& [name, bundle] : bundles) {
        double mean = 0;
        for (const auto& traj : trajs)
          mean += replacement_diagnostic(bundle, traj, graph, 0, cfg.eps, cfg.K);
        mean /= trajs.size();
        csv << std::hex << result.hash << std::dec << ',' << N << ',' << name
            << ',' << mean << "\n";
      }
    }
    write_file(fs::path(cfg.out_dir) / "replacement.csv", csv.str(), digests);
  } catch (const std::exception& ex) {
    result.failed = true;
    result.failed_stage = stage + ": " + ex.what();
  }
  return result;
}

namespace {

DenseMatrix<Exact> exact_matrix(std::initializer_list<Rational> entries,
                                int rows, int cols) {
  DenseMatrix<Exact> m(rows, cols);
  int i = 0;
  for (const Rational& r : entries) {
    m(i / cols, i % cols) = Exact(r);
    ++i;
  }
  return m;
}

std::string matrix_str(const DenseMatrix<Exact>& m) {
  std::ostringstream ss;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      ss << (i + j ? " " : "") << m(i, j).str();
  return ss.str();
}

PaperCheck check_matrix(const std::string& name, const DenseMatrix<Exact>& got,
                        const DenseMatrix<Exact>& expected) {
  PaperCheck c;
  c.name = name;
  c.computed = matrix_str(got);
  c.expected = matrix_str(expected);
  c.pass = got.rows() == expected.rows() && got.cols() == expected.cols();
  if (c.pass)
    for (int i = 0; i < got.rows() && c.pass; ++i)
      for (int j = 0; j < got.cols() && c.pass; ++j)
        c.pass = got(i, j) == expected(i, j);
  return c;
}

}  // namespace

std::vector<PaperCheck> verify_paper_tables() {
  std::vector<PaperCheck> checks;
  const Rational half(1, 2);

  auto solved_diffusion = [](const std::string& name) {
    LatticeSpec spec = catalog_lattice(name);
    return solve_harmonic<Exact>(spec.graph, spec.basis).diffusion;
  };

  checks.push_back(check_matrix("line (0a) diffusion", solved_diffusion("line"),
                                exact_matrix({half}, 1, 1)));
  checks.push_back(check_matrix("square (1a) diffusion",
                                solved_diffusion("square"),
                                exact_matrix({half, 0, 0, half}, 2, 2)));
  checks.push_back(check_matrix(
      "square-skew (1b) diffusion", solved_diffusion("square-skew"),
      exact_matrix({Rational(5, 8), Rational(1, 4), Rational(1, 4), half}, 2,
                   2)));
  checks.push_back(check_matrix(
      "hexagonal (2) diffusion", solved_diffusion("hexagonal"),
      exact_matrix({Rational(3, 8), 0, 0, Rational(3, 8)}, 2, 2)));
  checks.push_back(check_matrix(
      "kagome (3) diffusion", solved_diffusion("kagome"),
      exact_matrix({Rational(3, 8), 0, 0, Rational(3, 8)}, 2, 2)));

  // line2 (0b): the stated embedding {0,-1} gives 5/4 through the diffusion
  // formula; the harmonic solution gives 1/8.  The stated embedding is not
  // harmonic (residual -3 at vertex 0), a documented divergence.
  {
    LatticeSpec spec = catalog_lattice("line2");
    RealizationX stated = exact_realization(spec);
    checks.push_back(check_matrix("line2 (0b) stated-positions diffusion",
                                  stated.diffusion,
                                  exact_matrix({Rational(5, 4)}, 1, 1)));
    DenseMatrix<Exact> res =
        harmonicity_residual(spec.graph, spec.basis, *spec.override_positions);
    PaperCheck c;
    c.name = "line2 (0b) stated positions are non-harmonic (residual -3)";
    c.computed = res(0, 0).str();
    c.expected = "-3";
    c.pass = res(0, 0) == Exact(-3);
    c.documented_divergence = true;
    checks.push_back(c);
    RealizationX solved = solve_harmonic<Exact>(spec.graph, spec.basis);
    PaperCheck c2 = check_matrix("line2 (0b) harmonic-solution diffusion",
                                 solved.diffusion,
                                 exact_matrix({Rational(1, 8)}, 1, 1));
    c2.documented_divergence = true;  // differs from the published 5/4
    checks.push_back(c2);
  }

  // Example 1c: two-row quotient of the square lattice with the stated
  // periodic but non-harmonic embedding; residual at vertex 0 is (2, 0).
  {
    QuotientGraph g(2, 2);
    Eigen::VectorXi e10(2), e01(2), zero(2);
    e10 << 1, 0;
    e01 << 0, 1;
    zero << 0, 0;
    g.add_edge(0, 0, e10);
    g.add_edge(1, 1, e10);
    g.add_edge(0, 1, zero);
    g.add_edge(1, 0, e01);
    DenseMatrix<Exact> U = exact_matrix({1, 0, 0, 1}, 2, 2);
    DenseMatrix<Exact> pos(2, 2);
    pos(0, 0) = Exact(0);
    pos(0, 1) = Exact(0);
    pos(1, 0) = Exact(1);
    pos(1, 1) = Exact(half);
    DenseMatrix<Exact> res = harmonicity_residual(g, U, pos);
    PaperCheck c;
    c.name = "example 1c residual at (0,0)";
    c.computed = res(0, 0).str() + " " + res(0, 1).str();
    c.expected = "2 0";
    c.pass = res(0, 0) == Exact(2) && res(0, 1) == Exact(0);
    checks.push_back(c);
  }
  return checks;
}

}  // namespace crystal
