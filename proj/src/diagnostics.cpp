#include "crystal/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "crystal/observables.hpp"
#include "crystal/scaled_graph.hpp"
#include "crystal/word_metric.hpp"

namespace crystal {

std::vector<double> laplacian_convergence_check(const RealizationD& realization,
                                                const FourierField& J,
                                                const std::vector<int>& N_list) {
  const QuotientGraph& base = *realization.graph;
  const int nv0 = base.num_vertices();
  Eigen::MatrixXd Uinv_t = realization.basis.inverse().transpose();
  std::vector<double> out;
  for (int N : N_list) {
    ScaledGraph graph(base, N);
    ScalingMap map(graph, realization);
    double worst = 0.0;
    for (long long c = 0; c < graph.num_cells(); ++c) {
      double avg = 0.0;
      for (int x = 0; x < nv0; ++x) {
        long long v = graph.vertex(c, x);
        double jx = J(map.lattice_coords(v));
        for (int idx : base.out_edges(x))
          avg += J(map.lattice_coords(graph.edge_target(v, idx))) - jx;
      }
      avg *= static_cast<double>(N) * N / nv0;
      // reference at the cell's fundamental-domain anchor
      const Eigen::VectorXd& y0 = map.lattice_coords(graph.vertex(c, 0));
      Eigen::MatrixXd hess_u = Uinv_t * J.hessian(y0) * Uinv_t.transpose();
      double ref = 2.0 * (realization.diffusion * hess_u).trace();
      worst = std::max(worst, std::abs(avg - ref));
    }
    out.push_back(worst);
  }
  return out;
}

namespace {

double factorial(int d) {
  double f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<BallCountRow> ball_count_report(const RealizationD& realization,
                                            double eps,
                                            const std::vector<int>& N_list) {
  const int d = realization.graph->dimension();
  const int nv0 = realization.graph->num_vertices();
  const double detU = std::abs(realization.basis.determinant());
  std::vector<BallCountRow> out;
  for (int N : N_list) {
    BallCountRow row;
    row.N = N;
    row.volume_ratio = std::pow(2 * eps, d) / factorial(d) / detU;
    long long cells = l1_ball_count(d, static_cast<int>(std::floor(eps * N)));
    long long vn = 1;
    for (int i = 0; i < d; ++i) vn *= N;
    row.count_ratio = static_cast<double>(cells * nv0) /
                      (static_cast<double>(vn) * nv0);
    row.difference = std::abs(row.volume_ratio - row.count_ratio);
    row.scaled = N * row.difference;
    out.push_back(row);
  }
  return out;
}

double characteristic_pairing_gap(const Configuration& eta,
                                  const ScalingMap& map, long long z,
                                  double eps) {
  const ScaledGraph& graph = map.graph();
  const int d = graph.dimension();
  const Eigen::MatrixXd& U = map.realization().basis;
  const double detU = std::abs(U.determinant());
  const double ball_measure = std::pow(2 * eps, d) / factorial(d) / detU;

  // l^1 torus distance via the minimum over adjacent lattice translates.
  auto offsets = l1_ball_offsets(d, d);  // {-1,0,1}^d is contained in this
  Eigen::VectorXd uz = U * map.lattice_coords(z);
  auto torus_dist = [&](long long v) {
    Eigen::VectorXd delta = U * map.lattice_coords(v) - uz;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : offsets)
      best = std::min(best,
                      (delta + U * s.cast<double>()).lpNorm<1>());
    return best;
  };

  double pairing = 0.0;
  for (long long v = 0; v < graph.num_vertices(); ++v)
    if (eta[v] && torus_dist(v) <= eps) pairing += 1.0;
  pairing /= static_cast<double>(graph.num_vertices()) * ball_measure;

  LocalFunctionBundle occ{BundleKind::occupation, -1};
  double block = block_average(occ, eta, graph, z, eps * graph.N());
  return std::abs(pairing - block);
}

}  // namespace crystal
