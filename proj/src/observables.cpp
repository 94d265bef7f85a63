#include "crystal/observables.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace crystal {

double evaluate_bundle(const LocalFunctionBundle& f, const Configuration& eta,
                       const ScaledGraph& graph, long long v) {
  switch (f.kind) {
    case BundleKind::occupation:
      return eta[v];
    case BundleKind::edge_product: {
      const Edge& e = graph.base().edge(f.edge);
      if (graph.base_vertex_of(v) != e.tail) return 0.0;
      return eta[v] * eta[graph.edge_target(v, f.edge)];
    }
    case BundleKind::neighborhood_product: {
      double p = 1.0;
      for (int idx : graph.base().out_edges(graph.base_vertex_of(v)))
        p *= eta[graph.edge_target(v, idx)];
      return p;
    }
  }
  return 0.0;
}

double pair_field(const FourierField& J, const Configuration& eta,
                  const ScalingMap& map) {
  const long long n = map.graph().num_vertices();
  double sum = 0.0;
  for (long long v = 0; v < n; ++v)
    if (eta[v]) sum += J(map.lattice_coords(v));
  return sum / static_cast<double>(n);
}

double block_average(const LocalFunctionBundle& f, const Configuration& eta,
                     const ScaledGraph& graph, long long v, double R) {
  const int nv0 = graph.base().num_vertices();
  std::vector<long long> cells =
      graph.cell_ball(graph.cell_coords(graph.cell_of(v)), R);
  double sum = 0.0;
  for (long long c : cells)
    for (int b = 0; b < nv0; ++b)
      sum += evaluate_bundle(f, eta, graph, graph.vertex(c, b));
  return sum / (static_cast<double>(cells.size()) * nv0);
}

double orbit_average(const LocalFunctionBundle& f, const Configuration& eta,
                     const ScaledGraph& graph, long long v, double K) {
  std::vector<long long> cells =
      graph.cell_ball(graph.cell_coords(graph.cell_of(v)), K);
  const int b = graph.base_vertex_of(v);
  double sum = 0.0;
  for (long long c : cells)
    sum += evaluate_bundle(f, eta, graph, graph.vertex(c, b));
  return sum / static_cast<double>(cells.size());
}

namespace {

// Sites of the infinite lattice a bundle value at base vertex x depends on,
// as (shift, base vertex) pairs.
std::vector<std::pair<std::vector<int>, int>> bundle_window(
    const LocalFunctionBundle& f, const QuotientGraph& base, int x) {
  auto key = [&](const Eigen::VectorXi& s, int b) {
    std::vector<int> k(s.data(), s.data() + s.size());
    k.push_back(b);
    return k;
  };
  std::map<std::vector<int>, int> sites;  // key -> base vertex
  Eigen::VectorXi zero = Eigen::VectorXi::Zero(base.dimension());
  switch (f.kind) {
    case BundleKind::occupation:
      sites[key(zero, x)] = x;
      break;
    case BundleKind::edge_product: {
      const Edge& e = base.edge(f.edge);
      if (x != e.tail) return {};
      sites[key(zero, e.tail)] = e.tail;
      sites[key(e.shift, e.head)] = e.head;
      break;
    }
    case BundleKind::neighborhood_product:
      for (int idx : base.out_edges(x)) {
        const Edge& e = base.edge(idx);
        sites[key(e.shift, e.head)] = e.head;
      }
      break;
  }
  std::vector<std::pair<std::vector<int>, int>> out;
  for (auto& [k, b] : sites) out.emplace_back(k, b);
  return out;
}

}  // namespace

double canonical_expectation(const LocalFunctionBundle& f,
                             const QuotientGraph& base, int x, double rho) {
  if (rho < 0 || rho > 1) throw std::invalid_argument("rho must be in [0,1]");
  auto window = bundle_window(f, base, x);
  const int w = static_cast<int>(window.size());
  if (w > 20) throw std::invalid_argument("bundle window too large");
  if (w == 0) return 0.0;  // bundle is identically zero at this vertex
  // Occupancies are independent across distinct sites; the three bundle
  // kinds are products over (a subset of) the window, so enumerate.
  double total = 0.0;
  for (int state = 0; state < (1 << w); ++state) {
    double prob = 1.0, value = 1.0;
    for (int i = 0; i < w; ++i) {
      int bit = (state >> i) & 1;
      prob *= bit ? rho : 1.0 - rho;
      value *= bit;  // all three kinds multiply the window occupancies
    }
    total += prob * value;
  }
  return total;
}

double replacement_diagnostic(const LocalFunctionBundle& f,
                              const TrajectoryRecorder& trajectory,
                              const ScaledGraph& graph, int x, double eps,
                              int K) {
  if (trajectory.snapshots.size() < 2)
    throw std::invalid_argument("need at least two snapshots");
  const int nv0 = graph.base().num_vertices();
  const long long nc = graph.num_cells();
  const double epsN = eps * graph.N();
  auto k_offsets = l1_ball_offsets(graph.dimension(), K);
  auto block_offsets =
      l1_ball_offsets(graph.dimension(), static_cast<int>(std::floor(epsN)));
  if (2 * epsN >= graph.N() || 2 * K >= graph.N())
    throw std::invalid_argument("averaging radius >= N/2");

  std::vector<double> values(trajectory.snapshots.size());
  for (size_t s = 0; s < trajectory.snapshots.size(); ++s) {
    const Configuration& eta = trajectory.snapshots[s];
    // Per-cell bundle value at (sigma, x) and per-cell occupancy count.
    std::vector<double> fcell(nc), count(nc);
    for (long long c = 0; c < nc; ++c) {
      fcell[c] = evaluate_bundle(f, eta, graph, graph.vertex(c, x));
      double cc = 0;
      for (int b = 0; b < nv0; ++b) cc += eta[graph.vertex(c, b)];
      count[c] = cc;
    }
    double total = 0.0;
    for (long long c = 0; c < nc; ++c) {
      Eigen::VectorXi cc = graph.cell_coords(c);
      double ftilde = 0.0;
      for (const auto& tau : k_offsets) ftilde += fcell[graph.cell_index(cc + tau)];
      ftilde /= static_cast<double>(k_offsets.size());
      double etabar = 0.0;
      for (const auto& tau : block_offsets)
        etabar += count[graph.cell_index(cc + tau)];
      etabar /= static_cast<double>(block_offsets.size()) * nv0;
      total += std::abs(ftilde -
                        canonical_expectation(f, graph.base(), x, etabar));
    }
    values[s] = total / static_cast<double>(nc);
  }
  double integral = 0.0;
  for (size_t s = 1; s < values.size(); ++s)
    integral += 0.5 * (values[s] + values[s - 1]) *
                (trajectory.snapshot_times[s] - trajectory.snapshot_times[s - 1]);
  return integral;
}

double grid_pairing(const FourierField& J, const DensityGrid& grid) {
  double sum = 0.0;
  if (grid.d == 1) {
    for (int i = 0; i < grid.M; ++i) sum += J(grid.node(i)) * grid.values(i);
  } else {
    for (int i = 0; i < grid.M; ++i)
      for (int j = 0; j < grid.M; ++j)
        sum += J(grid.node(i, j)) * grid.values(grid.index(i, j));
  }
  return sum / static_cast<double>(grid.values.size());
}

std::vector<HydroError> hydrodynamic_error(
    const std::vector<TrajectoryRecorder>& trajectories,
    const std::vector<DensityGrid>& pde_snapshots,
    const std::vector<FourierField>& J_set, const ScalingMap& map) {
  if (trajectories.empty()) throw std::invalid_argument("no trajectories");
  const size_t n_times = pde_snapshots.size();
  for (const auto& traj : trajectories) {
    if (traj.snapshots.size() != n_times)
      throw std::invalid_argument("snapshot count mismatch");
    for (size_t s = 0; s < n_times; ++s)
      if (std::abs(traj.snapshot_times[s] - pde_snapshots[s].t) > 1e-12)
        throw std::invalid_argument("snapshot time mismatch");
  }
  std::vector<HydroError> out;
  const double R = static_cast<double>(trajectories.size());
  for (size_t s = 0; s < n_times; ++s) {
    for (size_t j = 0; j < J_set.size(); ++j) {
      double integral = grid_pairing(J_set[j], pde_snapshots[s]);
      double mean = 0, mean_abs = 0, sq = 0;
      for (const auto& traj : trajectories) {
        double p = pair_field(J_set[j], traj.snapshots[s], map);
        mean += p;
        mean_abs += std::abs(p - integral);
        sq += p * p;
      }
      mean /= R;
      mean_abs /= R;
      double var = std::max(0.0, sq / R - mean * mean);
      HydroError he;
      he.t = pde_snapshots[s].t;
      he.j_index = static_cast<int>(j);
      he.replica_mean_pairing = mean;
      he.pde_integral = integral;
      he.error_of_mean = std::abs(mean - integral);
      he.mean_abs_error = mean_abs;
      he.stderr_of_mean = R > 1 ? std::sqrt(var / (R - 1)) : 0.0;
      out.push_back(he);
    }
  }
  return out;
}

}  // namespace crystal
