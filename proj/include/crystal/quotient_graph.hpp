#ifndef CRYSTAL_QUOTIENT_GRAPH_HPP
#define CRYSTAL_QUOTIENT_GRAPH_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace crystal {

/// Oriented edge of the quotient graph.  The shift is the element of the
/// period group Z^d crossed when the edge is traversed in the covering
/// lattice: the lift of the edge at cell s runs from (s, tail) to
/// (s + shift, head).
struct Edge {
  int tail = 0;
  int head = 0;
  Eigen::VectorXi shift;
  int reverse = -1;  // index of the paired opposite orientation
};

/// Finite quotient graph of a crystal lattice: |V0| vertices, oriented
/// edges with integer shift vectors, period rank d.  Immutable once
/// validated.
class QuotientGraph {
 public:
  QuotientGraph(int d, int num_vertices) : d_(d), num_vertices_(num_vertices) {}

  /// Adds an unoriented edge as an oriented pair (e, ebar).
  void add_edge(int tail, int head, const Eigen::VectorXi& shift);

  /// Checks involution pairing, lattice connectivity (quotient connected and
  /// shifts of independent cycles generate Z^d) and rejects zero-shift
  /// self-loops.  Throws std::invalid_argument naming the offending edge.
  void validate() const;

  int dimension() const { return d_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int i) const { return edges_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(int v) const;
  /// Indices of edges with tail v (the set E_x of out-edges).
  std::vector<int> out_edges(int v) const;

 private:
  int d_;
  int num_vertices_;
  std::vector<Edge> edges_;
};

}  // namespace crystal

#endif
