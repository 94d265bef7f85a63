#ifndef CRYSTAL_HARMONIC_HPP
#define CRYSTAL_HARMONIC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "crystal/eigen_exact.hpp"
#include "crystal/quotient_graph.hpp"

namespace crystal {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline double scalar_abs_approx(double x) { return std::abs(x); }
inline double scalar_abs_approx(const Exact& x) {
  return x.is_zero() ? 0.0 : std::abs(x.to_double());
}
inline bool scalar_is_zero(double x) { return x == 0.0; }
inline bool scalar_is_zero(const Exact& x) { return x.is_zero(); }

/// Gaussian elimination with partial pivoting; works for double and for the
/// exact field scalar (pivot choice uses a floating approximation, the
/// arithmetic itself stays in the field).
template <typename Scalar>
DenseMatrix<Scalar> solve_dense(DenseMatrix<Scalar> A, DenseMatrix<Scalar> B) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n)
    throw std::invalid_argument("solve_dense: shape mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = scalar_abs_approx(A(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      double cand = scalar_abs_approx(A(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (scalar_is_zero(A(pivot, col)))
      throw std::runtime_error("solve_dense: singular system");
    if (pivot != col) {
      A.row(col).swap(A.row(pivot));
      B.row(col).swap(B.row(pivot));
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || scalar_is_zero(A(r, col))) continue;
      Scalar factor = A(r, col) / A(col, col);
      A.row(r) -= factor * A.row(col);
      B.row(r) -= factor * B.row(col);
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) B.row(r) /= A(r, r);
  return B;
}

/// Periodic harmonic realization of a quotient graph: lattice basis U
/// (columns u_1..u_d), fundamental-domain positions, per-edge vectors v(e)
/// and the diffusion matrix D = (1/4|V0|) sum_e v(e) v(e)^T.
template <typename Scalar>
struct Realization {
  const QuotientGraph* graph = nullptr;
  DenseMatrix<Scalar> basis;         // d x d
  DenseMatrix<Scalar> positions;     // |V0| x d (row per vertex)
  DenseMatrix<Scalar> edge_vectors;  // |E0| x d (row per oriented edge)
  DenseMatrix<Scalar> diffusion;     // d x d
  bool overridden = false;           // positions supplied, possibly non-harmonic

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> edge_vector(int e) const {
    return edge_vectors.row(e).transpose();
  }
};

using RealizationD = Realization<double>;
using RealizationX = Realization<Exact>;

/// v(e) = pos(head) + U * shift - pos(tail) for every oriented edge.
template <typename Scalar>
DenseMatrix<Scalar> edge_vectors_from_positions(
    const QuotientGraph& g, const DenseMatrix<Scalar>& basis,
    const DenseMatrix<Scalar>& positions) {
  DenseMatrix<Scalar> v(g.num_edges(), g.dimension());
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    for (int c = 0; c < g.dimension(); ++c) {
      Scalar shift_part(0);
      for (int j = 0; j < g.dimension(); ++j)
        shift_part += basis(c, j) * Scalar(e.shift(j));
      v(i, c) = positions(e.head, c) + shift_part - positions(e.tail, c);
    }
  }
  return v;
}

template <typename Scalar>
DenseMatrix<Scalar> diffusion_matrix(const QuotientGraph& g,
                                     const DenseMatrix<Scalar>& edge_vectors) {
  const int d = g.dimension();
  DenseMatrix<Scalar> D = DenseMatrix<Scalar>::Constant(d, d, Scalar(0));
  for (int i = 0; i < g.num_edges(); ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        D(r, c) += edge_vectors(i, r) * edge_vectors(i, c);
  Scalar denom = Scalar(4 * g.num_vertices());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) D(r, c) /= denom;
  return D;
}

/// Per-vertex harmonicity defect sum_{e in E_x} v(e); identically zero iff
/// the positions are harmonic.
template <typename Scalar>
DenseMatrix<Scalar> harmonicity_residual(const QuotientGraph& g,
                                         const DenseMatrix<Scalar>& basis,
                                         const DenseMatrix<Scalar>& positions) {
  DenseMatrix<Scalar> v = edge_vectors_from_positions(g, basis, positions);
  DenseMatrix<Scalar> res =
      DenseMatrix<Scalar>::Constant(g.num_vertices(), g.dimension(), Scalar(0));
  for (int i = 0; i < g.num_edges(); ++i)
    res.row(g.edge(i).tail) += v.row(i);
  return res;
}

/// Wraps user-supplied positions into a realization without solving; used
/// for stated (possibly non-harmonic) embeddings.
template <typename Scalar>
Realization<Scalar> make_realization(const QuotientGraph& g,
                                     DenseMatrix<Scalar> basis,
                                     DenseMatrix<Scalar> positions) {
  Realization<Scalar> r;
  r.graph = &g;
  r.basis = std::move(basis);
  r.positions = std::move(positions);
  r.edge_vectors = edge_vectors_from_positions(g, r.basis, r.positions);
  r.diffusion = diffusion_matrix(g, r.edge_vectors);
  r.overridden = true;
  return r;
}

/// Solves the pinned combinatorial-Laplacian system L p = b per coordinate,
/// with pin_vertex fixed at the origin.  The kernel of L is exactly the
/// constants on a connected graph, so pinning makes the reduced system
/// nonsingular.
template <typename Scalar>
Realization<Scalar> solve_harmonic(const QuotientGraph& g,
                                   const DenseMatrix<Scalar>& basis,
                                   int pin_vertex = 0) {
  g.validate();
  const int n = g.num_vertices();
  const int d = g.dimension();
  Realization<Scalar> r;
  r.graph = &g;
  r.basis = basis;
  r.positions = DenseMatrix<Scalar>::Constant(n, d, Scalar(0));
  if (n > 1) {
    // Reduced index map skipping the pinned vertex.
    auto red = [&](int v) { return v < pin_vertex ? v : v - 1; };
    DenseMatrix<Scalar> L = DenseMatrix<Scalar>::Constant(n - 1, n - 1, Scalar(0));
    DenseMatrix<Scalar> b = DenseMatrix<Scalar>::Constant(n - 1, d, Scalar(0));
    for (int i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edge(i);
      if (e.tail == pin_vertex) continue;
      int rt = red(e.tail);
      L(rt, rt) += Scalar(1);
      if (e.head != pin_vertex) L(rt, red(e.head)) -= Scalar(1);
      for (int c = 0; c < d; ++c)
        for (int j = 0; j < d; ++j)
          b(rt, c) += basis(c, j) * Scalar(e.shift(j));
    }
    DenseMatrix<Scalar> p = solve_dense<Scalar>(std::move(L), std::move(b));
    for (int v = 0; v < n; ++v)
      if (v != pin_vertex) r.positions.row(v) = p.row(red(v));
  }
  r.edge_vectors = edge_vectors_from_positions(g, r.basis, r.positions);
  r.diffusion = diffusion_matrix(g, r.edge_vectors);
  return r;
}

/// Max per-vertex l_infinity residual as a double (for tolerance checks).
template <typename Scalar>
double max_residual(const Realization<Scalar>& r) {
  DenseMatrix<Scalar> res =
      harmonicity_residual(*r.graph, r.basis, r.positions);
  double m = 0;
  for (Eigen::Index i = 0; i < res.rows(); ++i)
    for (Eigen::Index j = 0; j < res.cols(); ++j)
      m = std::max(m, scalar_abs_approx(res(i, j)));
  return m;
}

inline RealizationD to_double(const RealizationX& rx) {
  RealizationD r;
  r.graph = rx.graph;
  auto conv = [](const DenseMatrix<Exact>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
  };
  r.basis = conv(rx.basis);
  r.positions = conv(rx.positions);
  r.edge_vectors = conv(rx.edge_vectors);
  r.diffusion = conv(rx.diffusion);
  r.overridden = rx.overridden;
  return r;
}

/// Discrete Dirichlet energy (1/2) sum_{e in E0} |v(e)|^2 of candidate
/// positions; the harmonic solution is its critical point.
double dirichlet_energy(const QuotientGraph& g, const Eigen::MatrixXd& basis,
                        const Eigen::MatrixXd& positions);

}  // namespace crystal

#endif
