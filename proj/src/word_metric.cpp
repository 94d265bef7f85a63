#include "crystal/word_metric.hpp"

namespace crystal {

namespace {

void enumerate(int d, int R, int coord, Eigen::VectorXi& cur, int used,
               std::vector<Eigen::VectorXi>& out) {
  if (coord == d) {
    out.push_back(cur);
    return;
  }
  for (int v = -(R - used); v <= R - used; ++v) {
    cur(coord) = v;
    enumerate(d, R, coord + 1, cur, used + std::abs(v), out);
  }
}

}  // namespace

std::vector<Eigen::VectorXi> l1_ball_offsets(int d, int R) {
  std::vector<Eigen::VectorXi> out;
  if (R < 0) return out;
  Eigen::VectorXi cur = Eigen::VectorXi::Zero(d);
  enumerate(d, R, 0, cur, 0, out);
  return out;
}

long long l1_ball_count(int d, int R) {
  if (R < 0) return 0;
  // shell[l] = #{sigma in Z^d : |sigma|_1 = l}, built one dimension at a
  // time; the 1D shell is 1, 2, 2, 2, ...
  std::vector<long long> shell(R + 1, 0);
  shell[0] = 1;
  for (int dim = 0; dim < d; ++dim) {
    std::vector<long long> next(R + 1, 0);
    for (int l = 0; l <= R; ++l) {
      next[l] = shell[l];
      for (int v = 1; v <= l; ++v) next[l] += 2 * shell[l - v];
    }
    shell = next;
  }
  long long total = 0;
  for (int l = 0; l <= R; ++l) total += shell[l];
  return total;
}

}  // namespace crystal
