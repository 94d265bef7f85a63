#include "crystal/harmonic.hpp"

namespace crystal {

double dirichlet_energy(const QuotientGraph& g, const Eigen::MatrixXd& basis,
                        const Eigen::MatrixXd& positions) {
  Eigen::MatrixXd v = edge_vectors_from_positions<double>(g, basis, positions);
  return 0.5 * v.squaredNorm();
}

}  // namespace crystal
