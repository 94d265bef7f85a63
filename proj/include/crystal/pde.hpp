#ifndef CRYSTAL_PDE_HPP
#define CRYSTAL_PDE_HPP

#include <Eigen/Dense>
#include <vector>

#include "crystal/fourier_field.hpp"
#include "crystal/harmonic.hpp"

namespace crystal {

/// Discretized density on the uniform M^d grid over the unit torus in
/// lattice coordinates y (nodes y_i = i/M).  Carries the pulled-back
/// diffusion tensor Dt = U^{-1} D U^{-T}.
struct DensityGrid {
  int d = 1;
  int M = 0;
  double t = 0;
  Eigen::VectorXd values;    // size M^d, row-major (i * M + j for d = 2)
  Eigen::MatrixXd basis;     // U
  Eigen::MatrixXd diffusion; // D (Euclidean)
  Eigen::MatrixXd Dt;        // lattice-coordinate tensor

  long long index(int i, int j = 0) const {
    return d == 1 ? i : static_cast<long long>(i) * M + j;
  }
  Eigen::VectorXd node(int i, int j = 0) const {
    Eigen::VectorXd y(d);
    y(0) = static_cast<double>(i) / M;
    if (d == 2) y(1) = static_cast<double>(j) / M;
    return y;
  }
  double mass() const { return values.mean(); }
};

DensityGrid make_grid(const RealizationD& realization, int M,
                      const FourierField& rho0);

/// Largest stable time step: the diffusion bound h^2 / (4 d lambda_max(Dt))
/// and the drift CFL h / (2 max |flux'|).
double stable_dt(const DensityGrid& grid, const DriftSpec& H, double T);

/// One explicit conservative update.  Throws if dt violates the stability
/// bound.  Mass is conserved to round-off (telescoping fluxes).
void step(DensityGrid& grid, const DriftSpec& H, double dt);

/// Marches to each requested time (strictly increasing), landing on them
/// exactly; returns one grid per snapshot time.
std::vector<DensityGrid> solve(const RealizationD& realization,
                               const FourierField& rho0, const DriftSpec& H,
                               double T, int M,
                               const std::vector<double>& snapshot_times);

/// The PDE drift term (1/2|V0|) sum_{e in E0} grad_{v(e)}(g grad_{v(e)} H)
/// evaluated analytically at lattice coordinate y (edge-sum form).
double edge_sum_drift(const RealizationD& realization, const FourierField& g,
                      const FourierField& Hfield, const Eigen::VectorXd& y);

/// The equivalent divergence form 2 div(g D grad H), analytic.
double divergence_drift(const RealizationD& realization, const FourierField& g,
                        const FourierField& Hfield, const Eigen::VectorXd& y);

}  // namespace crystal

#endif
