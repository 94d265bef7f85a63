#ifndef CRYSTAL_SCALING_MAP_HPP
#define CRYSTAL_SCALING_MAP_HPP

#include <Eigen/Dense>
#include <vector>

#include "crystal/harmonic.hpp"
#include "crystal/scaled_graph.hpp"

namespace crystal {

/// The N-scaling map Phi_N in lattice coordinates: vertex (cell, x) of X_N
/// maps to y = (U^{-1} p_x + cell) / N reduced mod 1, so the whole graph
/// lands in the unit torus cell.  Euclidean positions are U y.
class ScalingMap {
 public:
  ScalingMap(const ScaledGraph& graph, const RealizationD& realization);

  const ScaledGraph& graph() const { return *graph_; }
  const RealizationD& realization() const { return *realization_; }
  int N() const { return graph_->N(); }

  /// Lattice coordinates y in [0,1)^d of vertex v.
  const Eigen::VectorXd& lattice_coords(long long v) const { return y_[v]; }
  Eigen::VectorXd euclidean(long long v) const {
    return realization_->basis * y_[v];
  }

 private:
  const ScaledGraph* graph_;
  const RealizationD* realization_;
  std::vector<Eigen::VectorXd> y_;
};

}  // namespace crystal

#endif
