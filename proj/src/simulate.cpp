#include "crystal/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace crystal {

uint64_t replica_seed(uint64_t master_seed, uint64_t replica_index) {
  // splitmix64 of the pair; decorrelates adjacent replica indices.
  uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (replica_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Configuration sample_initial(const FourierField& rho0, const ScalingMap& map,
                             uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const long long n = map.graph().num_vertices();
  Configuration eta(n);
  for (long long v = 0; v < n; ++v) {
    double p = rho0.clipped01(map.lattice_coords(v));
    if (p >= 1.0) {
      eta.set(v, 1);
    } else if (p > 0.0 && unif(rng) < p) {
      eta.set(v, 1);
    }
  }
  return eta;
}

double jump_rate(long long from, long long to, const Configuration& eta,
                 double t, const DriftSpec& H, const ScalingMap& map) {
  if (!eta[from] || eta[to]) return 0.0;
  double dH = H(t, map.lattice_coords(to)) - H(t, map.lattice_coords(from));
  return std::exp(dH);
}

namespace {

/// sup over t in [0,T] and edges e of |H(t, Phi_N(te)) - H(t, Phi_N(oe))|,
/// from the analytic coordinatewise gradient bound of the Fourier modes.
double oscillation_bound(const DriftSpec& H, const RealizationD& real,
                         int N, double T) {
  if (H.H0.empty()) return 0.0;
  Eigen::VectorXd gbound = H.H0.gradient_bound();
  Eigen::MatrixXd Uinv = real.basis.inverse();
  double worst = 0.0;
  for (int e = 0; e < real.graph->num_edges(); ++e) {
    Eigen::VectorXd dy = Uinv * real.edge_vector(e) / N;
    worst = std::max(worst, gbound.dot(dy.cwiseAbs()));
  }
  return H.envelope_max(T) * worst;
}

}  // namespace

TrajectoryRecorder simulate(const Configuration& initial,
                            const ScalingMap& map, const DriftSpec& H,
                            double T, uint64_t seed,
                            std::vector<double> snapshot_times,
                            long long event_cap) {
  if (T <= 0) throw std::invalid_argument("horizon must be positive");
  for (size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < 0 || snapshot_times[i] > T ||
        (i > 0 && snapshot_times[i] <= snapshot_times[i - 1]))
      throw std::invalid_argument("snapshot times must increase within [0,T]");
  }
  const ScaledGraph& graph = map.graph();
  const QuotientGraph& base = graph.base();
  const RealizationD& real = map.realization();
  if (real.overridden && max_residual(real) > 1e-10)
    throw std::invalid_argument(
        "refusing to simulate a non-harmonic overridden realization");
  const int N = graph.N();

  // One orientation per unoriented base edge.
  std::vector<int> fwd_edges;
  for (int i = 0; i < base.num_edges(); ++i)
    if (i < base.edge(i).reverse) fwd_edges.push_back(i);
  const long long n_unoriented =
      graph.num_cells() * static_cast<long long>(fwd_edges.size());

  // Static part of H per vertex; H(t, y) = envelope(t) * H0(y).
  std::vector<double> h0(graph.num_vertices(), 0.0);
  const bool has_drift = !H.is_constant();
  if (has_drift)
    for (long long v = 0; v < graph.num_vertices(); ++v)
      h0[v] = H.H0(map.lattice_coords(v));

  const double half_n2 = 0.5 * static_cast<double>(N) * N;
  const double edge_bound = half_n2 * std::exp(oscillation_bound(H, real, N, T));
  const double total_rate = edge_bound * static_cast<double>(n_unoriented);

  TrajectoryRecorder rec;
  rec.snapshot_times = std::move(snapshot_times);
  rec.seed = seed;

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_dist(total_rate);
  std::uniform_int_distribution<long long> edge_pick(0, n_unoriented - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Configuration eta = initial;
  double t = 0.0;
  size_t snap_idx = 0;
  auto record_until = [&](double horizon) {
    while (snap_idx < rec.snapshot_times.size() &&
           rec.snapshot_times[snap_idx] <= horizon) {
      rec.snapshots.push_back(eta);
      ++snap_idx;
    }
  };

  while (true) {
    double t_next = t + exp_dist(rng);
    record_until(std::min(t_next, T));
    if (t_next > T) break;
    t = t_next;
    ++rec.candidate_count;

    long long pick = edge_pick(rng);
    long long cell = pick / static_cast<long long>(fwd_edges.size());
    int base_edge = fwd_edges[pick % fwd_edges.size()];
    const Edge& e = base.edge(base_edge);
    long long v1 = graph.vertex(cell, e.tail);
    long long v2 = graph.edge_target(v1, base_edge);

    uint8_t o1 = eta[v1], o2 = eta[v2];
    if (o1 == o2) continue;  // both rates vanish
    double dH = has_drift ? H.envelope(t) * (h0[v2] - h0[v1]) : 0.0;
    double rate = half_n2 * (o1 ? std::exp(dH) : std::exp(-dH));
    if (rate > edge_bound * (1.0 + 1e-9))
      throw std::logic_error("thinning bound violated: oscillation bound wrong");
    if (unif(rng) < rate / edge_bound) {
      eta.exchange(v1, v2);
      ++rec.event_count;
      if (event_cap >= 0 && rec.event_count >= event_cap) {
        rec.truncated = true;
        break;
      }
    }
  }
  if (!rec.truncated) record_until(T);
  return rec;
}

}  // namespace crystal
