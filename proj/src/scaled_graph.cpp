#include "crystal/scaled_graph.hpp"

#include <cmath>

namespace crystal {

ScaledGraph::ScaledGraph(const QuotientGraph& base, int N)
    : base_(&base), N_(N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  num_cells_ = 1;
  for (int i = 0; i < base.dimension(); ++i) num_cells_ *= N;
}

std::vector<long long> ScaledGraph::cell_ball(const Eigen::VectorXi& center,
                                              double R) const {
  if (R < 0) throw std::invalid_argument("ball radius must be nonnegative");
  if (2 * R >= N_)
    throw std::invalid_argument("ball radius " + std::to_string(R) +
                                " >= N/2: wrap-around ambiguity");
  int r = static_cast<int>(std::floor(R));
  std::vector<long long> cells;
  for (const Eigen::VectorXi& tau : l1_ball_offsets(dimension(), r))
    cells.push_back(cell_index(center + tau));
  return cells;
}

ScaledGraph build_scaled_graph(const QuotientGraph& base, int N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  base.validate();
  return ScaledGraph(base, N);
}

}  // namespace crystal
