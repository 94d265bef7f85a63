#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crystal/catalog.hpp"
#include "crystal/harmonic.hpp"

using namespace crystal;

TEST_CASE("solve_dense agrees with Eigen on random double systems") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + trial;
    Eigen::MatrixXd A(n, n), B(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
      B(i, 0) = gauss(rng);
      B(i, 1) = gauss(rng);
    }
    Eigen::MatrixXd X = solve_dense<double>(A, B);
    CHECK((A * X - B).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("solve_dense is exact over the field") {
  DenseMatrix<Exact> A(2, 2), B(2, 1);
  A(0, 0) = Exact(2);
  A(0, 1) = Exact::sqrt3();
  A(1, 0) = Exact::sqrt3();
  A(1, 1) = Exact(2);
  B(0, 0) = Exact(1);
  B(1, 0) = Exact(0);
  DenseMatrix<Exact> X = solve_dense<Exact>(A, B);
  // inverse of [[2, s],[s, 2]] is [[2, -s],[-s, 2]]/1
  CHECK(X(0, 0) == Exact(2));
  CHECK(X(1, 0) == -Exact::sqrt3());
}

TEST_CASE("harmonic residual vanishes on every catalog lattice") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    LatticeSpec spec = catalog_lattice(name);
    RealizationX r = solve_harmonic<Exact>(spec.graph, spec.basis);
    DenseMatrix<Exact> res =
        harmonicity_residual(spec.graph, spec.basis, r.positions);
    for (Eigen::Index i = 0; i < res.rows(); ++i)
      for (Eigen::Index j = 0; j < res.cols(); ++j) CHECK(res(i, j).is_zero());
    CHECK(max_residual(r) == 0.0);
  }
}

TEST_CASE("diffusion matrices of the catalog, exactly") {
  auto D = [](const std::string& name) {
    LatticeSpec spec = catalog_lattice(name);
    return solve_harmonic<Exact>(spec.graph, spec.basis).diffusion;
  };
  CHECK(D("line")(0, 0) == Exact(Rational(1, 2)));
  CHECK(D("line2")(0, 0) == Exact(Rational(1, 8)));

  DenseMatrix<Exact> sq = D("square");
  CHECK(sq(0, 0) == Exact(Rational(1, 2)));
  CHECK(sq(1, 1) == Exact(Rational(1, 2)));
  CHECK(sq(0, 1).is_zero());

  DenseMatrix<Exact> sk = D("square-skew");
  CHECK(sk(0, 0) == Exact(Rational(5, 8)));
  CHECK(sk(0, 1) == Exact(Rational(1, 4)));
  CHECK(sk(1, 0) == Exact(Rational(1, 4)));
  CHECK(sk(1, 1) == Exact(Rational(1, 2)));

  // Hexagonal and Kagome share diag(3/8, 3/8), hence the same limit PDE.
  for (const char* name : {"hexagonal", "kagome"}) {
    DenseMatrix<Exact> h = D(name);
    CHECK(h(0, 0) == Exact(Rational(3, 8)));
    CHECK(h(1, 1) == Exact(Rational(3, 8)));
    CHECK(h(0, 1).is_zero());
    CHECK(h(1, 0).is_zero());
  }
}

TEST_CASE("line2: solved harmonic positions are {0, 1/2}") {
  LatticeSpec spec = catalog_lattice("line2");
  RealizationX r = solve_harmonic<Exact>(spec.graph, spec.basis);
  CHECK(r.positions(0, 0).is_zero());
  CHECK(r.positions(1, 0) == Exact(Rational(1, 2)));
  CHECK_FALSE(r.overridden);
}

TEST_CASE("line2: the override positions {0,-1} are kept but non-harmonic") {
  LatticeSpec spec = catalog_lattice("line2");
  RealizationX r = exact_realization(spec);
  CHECK(r.overridden);
  CHECK(r.positions(1, 0) == Exact(-1));
  CHECK(r.diffusion(0, 0) == Exact(Rational(5, 4)));
  DenseMatrix<Exact> res =
      harmonicity_residual(spec.graph, spec.basis, r.positions);
  CHECK(res(0, 0) == Exact(-3));
  CHECK(res(1, 0) == Exact(3));
}

TEST_CASE("gauge freedom: re-pinning shifts positions by one constant") {
  LatticeSpec spec = catalog_lattice("kagome");
  RealizationX a = solve_harmonic<Exact>(spec.graph, spec.basis, 0);
  RealizationX b = solve_harmonic<Exact>(spec.graph, spec.basis, 2);
  DenseMatrix<Exact> shift = b.positions.row(0) - a.positions.row(0);
  for (int v = 0; v < spec.graph.num_vertices(); ++v)
    for (int c = 0; c < 2; ++c)
      CHECK(b.positions(v, c) - a.positions(v, c) == shift(0, c));
  // Edge vectors and the diffusion matrix are gauge invariants.
  for (int e = 0; e < spec.graph.num_edges(); ++e)
    for (int c = 0; c < 2; ++c)
      CHECK(a.edge_vectors(e, c) == b.edge_vectors(e, c));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(a.diffusion(i, j) == b.diffusion(i, j));
}

TEST_CASE("harmonic positions are the Dirichlet energy minimizer") {
  LatticeSpec spec = catalog_lattice("hexagonal");
  RealizationD r = to_double(solve_harmonic<Exact>(spec.graph, spec.basis));
  double e0 = dirichlet_energy(spec.graph, r.basis, r.positions);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 0.1);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd p = r.positions;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) += gauss(rng);
    CHECK(dirichlet_energy(spec.graph, r.basis, p) >= e0);
  }
  // Central finite-difference gradient vanishes at the solution.
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < r.positions.rows(); ++i)
    for (Eigen::Index j = 0; j < r.positions.cols(); ++j) {
      Eigen::MatrixXd up = r.positions, dn = r.positions;
      up(i, j) += h;
      dn(i, j) -= h;
      double grad = (dirichlet_energy(spec.graph, r.basis, up) -
                     dirichlet_energy(spec.graph, r.basis, dn)) /
                    (2 * h);
      CHECK(std::abs(grad) < 1e-6);
    }
}

TEST_CASE("example: two-row square quotient with stated non-harmonic map") {
  QuotientGraph g(2, 2);
  Eigen::VectorXi e10(2), e01(2), zero(2);
  e10 << 1, 0;
  e01 << 0, 1;
  zero << 0, 0;
  g.add_edge(0, 0, e10);
  g.add_edge(1, 1, e10);
  g.add_edge(0, 1, zero);
  g.add_edge(1, 0, e01);
  g.validate();
  DenseMatrix<Exact> U = DenseMatrix<Exact>::Identity(2, 2);
  DenseMatrix<Exact> pos(2, 2);
  pos(0, 0) = Exact(0);
  pos(0, 1) = Exact(0);
  pos(1, 0) = Exact(1);
  pos(1, 1) = Exact(Rational(1, 2));
  DenseMatrix<Exact> res = harmonicity_residual(g, U, pos);
  CHECK(res(0, 0) == Exact(2));
  CHECK(res(0, 1).is_zero());
}

TEST_CASE("pinned vertex stays at the origin") {
  LatticeSpec spec = catalog_lattice("hexagonal");
  RealizationX r = solve_harmonic<Exact>(spec.graph, spec.basis, 1);
  CHECK(r.positions(1, 0).is_zero());
  CHECK(r.positions(1, 1).is_zero());
}
