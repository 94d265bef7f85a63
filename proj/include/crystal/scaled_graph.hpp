#ifndef CRYSTAL_SCALED_GRAPH_HPP
#define CRYSTAL_SCALED_GRAPH_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "crystal/quotient_graph.hpp"
#include "crystal/word_metric.hpp"

namespace crystal {

/// The N-scaling finite graph X_N: one copy of the fundamental domain per
/// cell of Gamma_N = (Z/NZ)^d, edges wrapping around cell arithmetic mod N.
/// Vertices are indexed cell * |V0| + base_vertex; cells are mixed-radix
/// integers over the d coordinates.
class ScaledGraph {
 public:
  ScaledGraph(const QuotientGraph& base, int N);

  const QuotientGraph& base() const { return *base_; }
  int N() const { return N_; }
  int dimension() const { return base_->dimension(); }
  long long num_cells() const { return num_cells_; }
  long long num_vertices() const { return num_cells_ * base_->num_vertices(); }
  long long num_edges() const { return num_cells_ * base_->num_edges(); }

  long long cell_index(const Eigen::VectorXi& cell) const {
    long long idx = 0;
    for (int i = 0; i < cell.size(); ++i) {
      int c = ((cell(i) % N_) + N_) % N_;
      idx = idx * N_ + c;
    }
    return idx;
  }
  Eigen::VectorXi cell_coords(long long idx) const {
    Eigen::VectorXi cell(dimension());
    for (int i = dimension() - 1; i >= 0; --i) {
      cell(i) = static_cast<int>(idx % N_);
      idx /= N_;
    }
    return cell;
  }

  long long vertex(long long cell_idx, int base_vertex) const {
    return cell_idx * base_->num_vertices() + base_vertex;
  }
  long long cell_of(long long v) const { return v / base_->num_vertices(); }
  int base_vertex_of(long long v) const {
    return static_cast<int>(v % base_->num_vertices());
  }

  /// Head of the lift of base edge `edge_idx` whose tail lies in cell of v.
  long long edge_target(long long v, int edge_idx) const {
    const Edge& e = base_->edge(edge_idx);
    Eigen::VectorXi cell = cell_coords(cell_of(v)) + e.shift;
    return vertex(cell_index(cell), e.head);
  }

  /// Translate of vertex v by the group element sigma.
  long long translate(long long v, const Eigen::VectorXi& sigma) const {
    Eigen::VectorXi cell = cell_coords(cell_of(v)) + sigma;
    return vertex(cell_index(cell), base_vertex_of(v));
  }

  /// Cells sigma with |sigma - center| <= R in the Gamma_N word metric.
  /// Requires R < N/2 so that the ball embeds without wrap-around.
  std::vector<long long> cell_ball(const Eigen::VectorXi& center,
                                   double R) const;

 private:
  const QuotientGraph* base_;
  int N_;
  long long num_cells_;
};

/// Validates N >= 1 and the base invariants, then builds X_N.
ScaledGraph build_scaled_graph(const QuotientGraph& base, int N);

}  // namespace crystal

#endif
