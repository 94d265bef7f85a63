#ifndef CRYSTAL_WORD_METRIC_HPP
#define CRYSTAL_WORD_METRIC_HPP

#include <Eigen/Dense>
#include <vector>

namespace crystal {

/// l^1 word length on Z^d with the standard generators.
inline int word_length(const Eigen::VectorXi& sigma) {
  return sigma.lpNorm<1>();
}

/// Word length on Gamma_N = (Z/NZ)^d: coordinatewise min(k, N-k) over the
/// canonical representative.
inline int word_length_mod(const Eigen::VectorXi& sigma, int N) {
  int len = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    int k = ((sigma(i) % N) + N) % N;
    len += std::min(k, N - k);
  }
  return len;
}

/// All offsets tau in Z^d with |tau|_1 <= R (R >= 0).  Deterministic
/// lexicographic order.
std::vector<Eigen::VectorXi> l1_ball_offsets(int d, int R);

/// Number of Z^d points with |sigma|_1 <= R.
long long l1_ball_count(int d, int R);

}  // namespace crystal

#endif
