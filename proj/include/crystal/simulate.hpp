#ifndef CRYSTAL_SIMULATE_HPP
#define CRYSTAL_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "crystal/configuration.hpp"
#include "crystal/fourier_field.hpp"
#include "crystal/scaling_map.hpp"

namespace crystal {

/// Snapshot record of one trajectory: configurations at the requested
/// times, plus reproducibility metadata.
struct TrajectoryRecorder {
  std::vector<double> snapshot_times;
  std::vector<Configuration> snapshots;
  uint64_t seed = 0;
  long long event_count = 0;
  long long candidate_count = 0;
  bool truncated = false;  // event budget exhausted before the horizon
};

/// Independent Bernoulli(rho0(Phi_N(x))) occupancy per vertex, with rho0
/// clipped into [0,1].
Configuration sample_initial(const FourierField& rho0, const ScalingMap& map,
                             uint64_t seed);

/// The WASEP rate c^H(e, eta, t) for the oriented jump from vertex `from`
/// to vertex `to` (the N^2/2 acceleration factor is applied by the
/// simulator, not here).
double jump_rate(long long from, long long to, const Configuration& eta,
                 double t, const DriftSpec& H, const ScalingMap& map);

/// Exact trajectory of the chain generated by N^2 L_N^H via thinning
/// against a constant per-edge bound derived from the analytic gradient
/// bound of H.  Snapshot times must be strictly increasing within [0, T].
TrajectoryRecorder simulate(const Configuration& initial,
                            const ScalingMap& map, const DriftSpec& H,
                            double T, uint64_t seed,
                            std::vector<double> snapshot_times,
                            long long event_cap = -1);

/// Mixes a master seed and a replica index into one stream seed.
uint64_t replica_seed(uint64_t master_seed, uint64_t replica_index);

}  // namespace crystal

#endif
