#include "crystal/pde.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace crystal {

DensityGrid make_grid(const RealizationD& realization, int M,
                      const FourierField& rho0) {
  DensityGrid g;
  g.d = realization.graph->dimension();
  if (g.d > 2) throw std::invalid_argument("grids support d <= 2");
  g.M = M;
  g.basis = realization.basis;
  g.diffusion = realization.diffusion;
  Eigen::MatrixXd Uinv = realization.basis.inverse();
  g.Dt = Uinv * realization.diffusion * Uinv.transpose();
  long long n = 1;
  for (int i = 0; i < g.d; ++i) n *= M;
  g.values.resize(n);
  if (g.d == 1) {
    for (int i = 0; i < M; ++i) g.values(i) = rho0.clipped01(g.node(i));
  } else {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        g.values(g.index(i, j)) = rho0.clipped01(g.node(i, j));
  }
  return g;
}

namespace {

double drift_speed_bound(const DensityGrid& grid, const DriftSpec& H,
                         double T) {
  if (H.H0.empty()) return 0.0;
  Eigen::VectorXd gb = H.envelope_max(T) * H.H0.gradient_bound();
  // |2 (Dt grad H)_a| <= 2 sum_b |Dt_ab| gb_b; flux derivative in rho is
  // bounded by the face speed times |d/drho rho(1-rho)| <= 1.
  double worst = 0.0;
  for (int a = 0; a < grid.d; ++a) {
    double s = 0.0;
    for (int b = 0; b < grid.d; ++b) s += std::abs(grid.Dt(a, b)) * gb(b);
    worst = std::max(worst, 2.0 * s);
  }
  return worst;
}

}  // namespace

double stable_dt(const DensityGrid& grid, const DriftSpec& H, double T) {
  const double h = 1.0 / grid.M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(grid.Dt);
  double lam = es.eigenvalues().maxCoeff();
  double dt = h * h / (4.0 * grid.d * lam);
  double speed = drift_speed_bound(grid, H, T);
  if (speed > 0) dt = std::min(dt, h / (2.0 * speed));
  return dt;
}

void step(DensityGrid& grid, const DriftSpec& H, double dt) {
  const int M = grid.M;
  const double h = 1.0 / M;
  if (dt > stable_dt(grid, H, grid.t + dt) * (1.0 + 1e-12))
    throw std::invalid_argument("time step " + std::to_string(dt) +
                                " exceeds the stability bound");
  const Eigen::MatrixXd& Dt = grid.Dt;
  const Eigen::VectorXd& rho = grid.values;
  const bool drift = !H.is_constant();
  const double env = H.envelope(grid.t);
  Eigen::VectorXd next = rho;
  auto wrap = [M](int i) { return ((i % M) + M) % M; };

  if (grid.d == 1) {
    const double D = Dt(0, 0);
    // face flux between i and i+1
    Eigen::VectorXd flux(M);
    for (int i = 0; i < M; ++i) {
      int ip = wrap(i + 1);
      double f = D * (rho(ip) - rho(i)) / h;
      if (drift) {
        Eigen::VectorXd yf(1);
        yf(0) = (i + 0.5) / M;
        double g = 0.5 * (rho(i) * (1 - rho(i)) + rho(ip) * (1 - rho(ip)));
        f -= 2.0 * g * D * env * H.H0.gradient(yf)(0);
      }
      flux(i) = f;
    }
    for (int i = 0; i < M; ++i)
      next(i) += dt / h * (flux(i) - flux(wrap(i - 1)));
  } else {
    auto at = [&](int i, int j) { return rho(grid.index(wrap(i), wrap(j))); };
    auto gval = [&](int i, int j) {
      double r = at(i, j);
      return r * (1 - r);
    };
    // flux0(i,j): face between (i,j) and (i+1,j); flux1: (i,j)->(i,j+1)
    Eigen::VectorXd flux0(grid.values.size()), flux1(grid.values.size());
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        double d0, d1;
        // axis-0 face
        d0 = (at(i + 1, j) - at(i, j)) / h;
        d1 = (at(i, j + 1) + at(i + 1, j + 1) - at(i, j - 1) -
              at(i + 1, j - 1)) /
             (4 * h);
        double f0 = Dt(0, 0) * d0 + Dt(0, 1) * d1;
        // axis-1 face
        d1 = (at(i, j + 1) - at(i, j)) / h;
        d0 = (at(i + 1, j) + at(i + 1, j + 1) - at(i - 1, j) -
              at(i - 1, j + 1)) /
             (4 * h);
        double f1 = Dt(1, 0) * d0 + Dt(1, 1) * d1;
        if (drift) {
          Eigen::VectorXd yf(2);
          yf(0) = (i + 0.5) / M;
          yf(1) = static_cast<double>(j) / M;
          Eigen::VectorXd v = Dt * (env * H.H0.gradient(yf));
          f0 -= 2.0 * 0.5 * (gval(i, j) + gval(i + 1, j)) * v(0);
          yf(0) = static_cast<double>(i) / M;
          yf(1) = (j + 0.5) / M;
          v = Dt * (env * H.H0.gradient(yf));
          f1 -= 2.0 * 0.5 * (gval(i, j) + gval(i, j + 1)) * v(1);
        }
        flux0(grid.index(i, j)) = f0;
        flux1(grid.index(i, j)) = f1;
      }
    }
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        next(grid.index(i, j)) +=
            dt / h *
            (flux0(grid.index(i, j)) - flux0(grid.index(wrap(i - 1), j)) +
             flux1(grid.index(i, j)) - flux1(grid.index(i, wrap(j - 1))));
  }
  grid.values = std::move(next);
  grid.t += dt;
}

std::vector<DensityGrid> solve(const RealizationD& realization,
                               const FourierField& rho0, const DriftSpec& H,
                               double T, int M,
                               const std::vector<double>& snapshot_times) {
  for (size_t i = 0; i < snapshot_times.size(); ++i)
    if (snapshot_times[i] < 0 || snapshot_times[i] > T ||
        (i > 0 && snapshot_times[i] <= snapshot_times[i - 1]))
      throw std::invalid_argument("snapshot times must increase within [0,T]");
  DensityGrid grid = make_grid(realization, M, rho0);
  const double dt0 = 0.9 * stable_dt(grid, H, T);
  std::vector<DensityGrid> out;
  for (double target : snapshot_times) {
    while (grid.t < target - 1e-14) {
      double dt = std::min(dt0, target - grid.t);
      step(grid, H, dt);
    }
    grid.t = target;  // absorb 1e-14 slack
    out.push_back(grid);
  }
  return out;
}

double edge_sum_drift(const RealizationD& realization, const FourierField& g,
                      const FourierField& Hfield, const Eigen::VectorXd& y) {
  const QuotientGraph& graph = *realization.graph;
  Eigen::MatrixXd Uinv_t = realization.basis.inverse().transpose();
  // Euclidean derivatives pulled back from lattice coordinates.
  Eigen::VectorXd grad_g = Uinv_t * g.gradient(y);
  Eigen::VectorXd grad_H = Uinv_t * Hfield.gradient(y);
  Eigen::MatrixXd hess_H = Uinv_t * Hfield.hessian(y) * Uinv_t.transpose();
  double gv = g(y);
  double total = 0;
  for (int e = 0; e < graph.num_edges(); ++e) {
    Eigen::VectorXd v = realization.edge_vector(e);
    total += v.dot(grad_g) * v.dot(grad_H) + gv * v.dot(hess_H * v);
  }
  return total / (2.0 * graph.num_vertices());
}

double divergence_drift(const RealizationD& realization, const FourierField& g,
                        const FourierField& Hfield, const Eigen::VectorXd& y) {
  Eigen::MatrixXd Uinv_t = realization.basis.inverse().transpose();
  Eigen::VectorXd grad_g = Uinv_t * g.gradient(y);
  Eigen::VectorXd grad_H = Uinv_t * Hfield.gradient(y);
  Eigen::MatrixXd hess_H = Uinv_t * Hfield.hessian(y) * Uinv_t.transpose();
  const Eigen::MatrixXd& D = realization.diffusion;
  return 2.0 * (grad_g.dot(D * grad_H) + g(y) * (D * hess_H).trace());
}

}  // namespace crystal
