#include "crystal/scaling_map.hpp"

namespace crystal {

ScalingMap::ScalingMap(const ScaledGraph& graph, const RealizationD& realization)
    : graph_(&graph), realization_(&realization) {
  const int d = graph.dimension();
  const int nv0 = graph.base().num_vertices();
  Eigen::MatrixXd Uinv = realization.basis.inverse();
  std::vector<Eigen::VectorXd> y0(nv0);
  for (int x = 0; x < nv0; ++x)
    y0[x] = Uinv * realization.positions.row(x).transpose();
  y_.resize(graph.num_vertices());
  const int N = graph.N();
  for (long long c = 0; c < graph.num_cells(); ++c) {
    Eigen::VectorXd cell = graph.cell_coords(c).cast<double>();
    for (int x = 0; x < nv0; ++x) {
      Eigen::VectorXd y = (y0[x] + cell) / N;
      for (int i = 0; i < d; ++i) y(i) -= std::floor(y(i));
      y_[graph.vertex(c, x)] = y;
    }
  }
}

}  // namespace crystal
