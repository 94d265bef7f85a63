#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crystal/catalog.hpp"
#include "crystal/fourier_field.hpp"
#include "crystal/scaling_map.hpp"

using namespace crystal;

namespace {

FourierField random_field(int d, std::mt19937_64& rng, int n_modes = 3) {
  std::uniform_int_distribution<int> kdist(-2, 2);
  std::normal_distribution<double> gauss;
  FourierField f(d);
  for (int m = 0; m < n_modes; ++m) {
    Eigen::VectorXi k(d);
    for (int i = 0; i < d; ++i) k(i) = kdist(rng);
    f.add_mode(k, gauss(rng), gauss(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("gradient and hessian match central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double h = 1e-5;
  for (int d : {1, 2}) {
    FourierField f = random_field(d, rng);
    for (int trial = 0; trial < 8; ++trial) {
      Eigen::VectorXd y(d);
      for (int i = 0; i < d; ++i) y(i) = unif(rng);
      Eigen::VectorXd g = f.gradient(y);
      Eigen::MatrixXd H = f.hessian(y);
      for (int i = 0; i < d; ++i) {
        Eigen::VectorXd up = y, dn = y;
        up(i) += h;
        dn(i) -= h;
        CHECK(g(i) == doctest::Approx((f(up) - f(dn)) / (2 * h)).epsilon(1e-5));
        for (int j = 0; j < d; ++j) {
          Eigen::VectorXd gu = f.gradient(up), gd = f.gradient(dn);
          CHECK(H(j, i) ==
                doctest::Approx((gu(j) - gd(j)) / (2 * h)).epsilon(1e-4));
        }
      }
    }
  }
}

TEST_CASE("periodicity on the unit torus") {
  std::mt19937_64 rng(6);
  FourierField f = random_field(2, rng);
  Eigen::VectorXd y(2), shift(2);
  y << 0.3, 0.7;
  shift << 1, -2;
  CHECK(f(y) == doctest::Approx(f(y + shift)).epsilon(1e-12));
}

TEST_CASE("gradient_bound dominates sampled derivatives") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  FourierField f = random_field(2, rng, 4);
  Eigen::VectorXd bound = f.gradient_bound();
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd y(2);
    y << unif(rng), unif(rng);
    Eigen::VectorXd g = f.gradient(y);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(g(i)) <= bound(i) + 1e-12);
  }
}

TEST_CASE("mean and clipping") {
  FourierField f(1);
  Eigen::VectorXi zero = Eigen::VectorXi::Zero(1), one(1);
  one << 1;
  f.add_mode(zero, 0.5, 0.0);
  f.add_mode(one, 0.9, 0.0);  // 0.5 + 0.9 cos(2 pi y), exceeds [0,1]
  CHECK(f.mean() == doctest::Approx(0.5));
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(1), yh(1);
  yh << 0.5;
  CHECK(f.clipped01(y0) == 1.0);
  CHECK(f.clipped01(yh) == 0.0);
}

TEST_CASE("drift spec envelope and constancy") {
  DriftSpec H;
  H.c0 = 1.0;
  H.c1 = -2.0;
  CHECK(H.envelope(0.25) == doctest::Approx(0.5));
  CHECK(H.envelope_max(1.0) == doctest::Approx(1.0));
  CHECK(H.is_constant());  // empty H0
  Eigen::VectorXi zero = Eigen::VectorXi::Zero(1), one(1);
  one << 1;
  H.H0.add_mode(zero, 3.0, 0.0);
  CHECK(H.is_constant());  // spatially flat
  H.H0.add_mode(one, 1.0, 0.0);
  CHECK_FALSE(H.is_constant());
}

TEST_CASE("scaling map lands every vertex in the unit torus cell") {
  for (const char* name : {"square-skew", "hexagonal", "kagome"}) {
    CAPTURE(name);
    LatticeSpec spec = catalog_lattice(name);
    RealizationD real = to_double(solve_harmonic<Exact>(spec.graph, spec.basis));
    ScaledGraph graph(spec.graph, 6);
    ScalingMap map(graph, real);
    for (long long v = 0; v < graph.num_vertices(); ++v) {
      Eigen::VectorXd y = map.lattice_coords(v);
      for (int i = 0; i < 2; ++i) {
        CHECK(y(i) >= 0.0);
        CHECK(y(i) < 1.0);
      }
      CHECK((map.euclidean(v) - real.basis * y).norm() < 1e-14);
    }
  }
}

TEST_CASE("scaling map separates vertices and respects edge increments") {
  LatticeSpec spec = catalog_lattice("hexagonal");
  RealizationD real = to_double(solve_harmonic<Exact>(spec.graph, spec.basis));
  const int N = 8;
  ScaledGraph graph(spec.graph, N);
  ScalingMap map(graph, real);
  // Distinct vertices map to distinct points.
  std::set<std::pair<long long, long long>> seen;
  for (long long v = 0; v < graph.num_vertices(); ++v) {
    Eigen::VectorXd y = map.lattice_coords(v);
    auto key = std::make_pair(llround(y(0) * 1e12), llround(y(1) * 1e12));
    CHECK(seen.insert(key).second);
  }
  // Crossing an edge moves by U^{-1} v(e)/N, up to torus wrap.
  Eigen::MatrixXd Uinv = real.basis.inverse();
  for (long long v = 0; v < graph.num_vertices(); ++v)
    for (int idx : graph.base().out_edges(graph.base_vertex_of(v))) {
      Eigen::VectorXd dy = map.lattice_coords(graph.edge_target(v, idx)) -
                           map.lattice_coords(v) -
                           Uinv * real.edge_vectors.row(idx).transpose() / N;
      for (int i = 0; i < 2; ++i)
        CHECK(std::abs(dy(i) - std::round(dy(i))) < 1e-12);
    }
}
