#ifndef CRYSTAL_DIAGNOSTICS_HPP
#define CRYSTAL_DIAGNOSTICS_HPP

#include <vector>

#include "crystal/configuration.hpp"
#include "crystal/fourier_field.hpp"
#include "crystal/scaling_map.hpp"

namespace crystal {

/// Max over cells of |(1/|V0|) sum_x d(x) N^2 Delta^c_N J - 2 grad D grad J|
/// for each N; the deviation should vanish as N grows.
std::vector<double> laplacian_convergence_check(const RealizationD& realization,
                                                const FourierField& J,
                                                const std::vector<int>& N_list);

struct BallCountRow {
  int N = 0;
  double volume_ratio = 0;
  double count_ratio = 0;
  double difference = 0;
  double scaled = 0;  // N * |difference|, bounded by the lemma
};

/// Compares the continuum l^1-ball volume fraction against the lattice
/// block-count fraction for each N.
std::vector<BallCountRow> ball_count_report(const RealizationD& realization,
                                            double eps,
                                            const std::vector<int>& N_list);

/// |<xi_N, chi_{Phi_N(z), eps}> - etabar_{z, eps N}| for a configuration and
/// center vertex z; the lemma bounds N times this.
double characteristic_pairing_gap(const Configuration& eta,
                                  const ScalingMap& map, long long z,
                                  double eps);

}  // namespace crystal

#endif
