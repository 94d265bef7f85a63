#ifndef CRYSTAL_OBSERVABLES_HPP
#define CRYSTAL_OBSERVABLES_HPP

#include <vector>

#include "crystal/configuration.hpp"
#include "crystal/fourier_field.hpp"
#include "crystal/pde.hpp"
#include "crystal/scaling_map.hpp"
#include "crystal/simulate.hpp"

namespace crystal {

enum class BundleKind {
  occupation,            // f_x = eta_x
  edge_product,          // f_x = eta_{o sigma e} eta_{t sigma e} at x = o sigma e
  neighborhood_product,  // f_x = prod_{e in E_x} eta_{te}
};

/// Gamma-periodic local function bundle; edge_product carries the base edge
/// it is built from.
struct LocalFunctionBundle {
  BundleKind kind = BundleKind::occupation;
  int edge = -1;
};

/// f_v(eta) for a vertex v of X_N.
double evaluate_bundle(const LocalFunctionBundle& f, const Configuration& eta,
                       const ScaledGraph& graph, long long v);

/// <J, xi_N> = (1/|V_N|) sum_x eta_x J(Phi_N(x)).
double pair_field(const FourierField& J, const Configuration& eta,
                  const ScalingMap& map);

/// Mean of f over the block-ball copy of B(D_{x0}, R) containing v.
double block_average(const LocalFunctionBundle& f, const Configuration& eta,
                     const ScaledGraph& graph, long long v, double R);

/// Mean of f over the Gamma_N orbit translates {sigma v : |sigma| <= K}.
double orbit_average(const LocalFunctionBundle& f, const Configuration& eta,
                     const ScaledGraph& graph, long long v, double K);

/// Exact E_{nu_rho}[f_x] by enumeration over the window states; a
/// polynomial in rho.  Rejects windows larger than 20 sites.
double canonical_expectation(const LocalFunctionBundle& f,
                             const QuotientGraph& base, int x, double rho);

/// Time-integrated, Gamma_N-averaged replacement defect
/// (1/|Gamma_N|) int_0^T sum_sigma |ftilde_{sigma x,K} - <f_x>(etabar_{sigma x0, eps N})| dt
/// by trapezoidal quadrature over the recorded snapshots.
double replacement_diagnostic(const LocalFunctionBundle& f,
                              const TrajectoryRecorder& trajectory,
                              const ScaledGraph& graph, int x, double eps,
                              int K);

/// Midpoint-quadrature integral of J against a PDE density grid.
double grid_pairing(const FourierField& J, const DensityGrid& grid);

struct HydroError {
  double t = 0;
  int j_index = 0;
  double replica_mean_pairing = 0;
  double pde_integral = 0;
  double error_of_mean = 0;          // |mean_r pairing - integral|
  double mean_abs_error = 0;         // mean_r |pairing - integral|
  double stderr_of_mean = 0;
};

/// Per-(time, J) comparison of simulated pairings against the PDE solution.
/// trajectories[r] and pde_snapshots must share identical snapshot times.
std::vector<HydroError> hydrodynamic_error(
    const std::vector<TrajectoryRecorder>& trajectories,
    const std::vector<DensityGrid>& pde_snapshots,
    const std::vector<FourierField>& J_set, const ScalingMap& map);

}  // namespace crystal

#endif
