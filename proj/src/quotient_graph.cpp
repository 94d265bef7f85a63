#include "crystal/quotient_graph.hpp"

#include <numeric>
#include <stdexcept>

namespace crystal {

void QuotientGraph::add_edge(int tail, int head, const Eigen::VectorXi& shift) {
  if (tail < 0 || tail >= num_vertices_ || head < 0 || head >= num_vertices_)
    throw std::invalid_argument("edge endpoint out of range");
  if (shift.size() != d_) throw std::invalid_argument("shift has wrong dimension");
  int i = static_cast<int>(edges_.size());
  edges_.push_back({tail, head, shift, i + 1});
  edges_.push_back({head, tail, -shift, i});
}

int QuotientGraph::degree(int v) const {
  int deg = 0;
  for (const Edge& e : edges_)
    if (e.tail == v) ++deg;
  return deg;
}

std::vector<int> QuotientGraph::out_edges(int v) const {
  std::vector<int> out;
  for (int i = 0; i < num_edges(); ++i)
    if (edges_[i].tail == v) out.push_back(i);
  return out;
}

namespace {

// Row-reduces integer vectors over Z and checks whether they generate Z^d:
// full rank and unimodular lattice (Hermite normal form with unit diagonal).
bool generates_zd(std::vector<Eigen::VectorXi> vecs, int d) {
  if (d == 0) return true;
  // Hermite normal form by column: process coordinates left to right.
  int row = 0;
  std::vector<Eigen::VectorXi> basis;
  for (int col = 0; col < d; ++col) {
    // Euclidean reduction of all remaining vectors on this coordinate.
    while (true) {
      int pivot = -1;
      for (size_t i = row; i < vecs.size(); ++i)
        if (vecs[i](col) != 0 &&
            (pivot < 0 || std::abs(vecs[i](col)) < std::abs(vecs[pivot](col))))
          pivot = static_cast<int>(i);
      if (pivot < 0) break;
      std::swap(vecs[row], vecs[pivot]);
      bool reduced = true;
      for (size_t i = row + 1; i < vecs.size(); ++i) {
        if (vecs[i](col) == 0) continue;
        int q = vecs[i](col) / vecs[row](col);
        vecs[i] -= q * vecs[row];
        if (vecs[i](col) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (static_cast<size_t>(row) >= vecs.size() || vecs[row](col) == 0)
      return false;  // rank deficient
    basis.push_back(vecs[row]);
    ++row;
  }
  // Determinant of the triangular basis must be +-1 for the sublattice to be
  // all of Z^d.
  long long det = 1;
  for (int i = 0; i < d; ++i) det *= basis[i](i);
  return det == 1 || det == -1;
}

}  // namespace

void QuotientGraph::validate() const {
  for (int i = 0; i < num_edges(); ++i) {
    const Edge& e = edges_[i];
    if (e.reverse < 0 || e.reverse >= num_edges() || e.reverse == i)
      throw std::invalid_argument("edge " + std::to_string(i) +
                                  ": broken involution pairing");
    const Edge& r = edges_[e.reverse];
    if (r.reverse != i || r.tail != e.head || r.head != e.tail ||
        r.shift != -e.shift)
      throw std::invalid_argument("edge " + std::to_string(i) +
                                  ": reverse edge mismatch");
    if (e.tail == e.head && e.shift.isZero())
      throw std::invalid_argument("edge " + std::to_string(i) +
                                  ": zero-shift self-loop");
  }
  // Quotient connectivity via union-find, collecting a spanning-tree
  // potential in Z^d so that independent-cycle shifts can be tested.
  std::vector<int> parent(num_vertices_, -1);
  std::vector<Eigen::VectorXi> pot(num_vertices_,
                                   Eigen::VectorXi::Zero(d_));
  std::vector<bool> seen(num_vertices_, false);
  std::vector<int> stack;
  if (num_vertices_ > 0) {
    seen[0] = true;
    stack.push_back(0);
  }
  std::vector<Eigen::VectorXi> cycles;
  std::vector<bool> tree_edge(num_edges(), false);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int i = 0; i < num_edges(); ++i) {
      const Edge& e = edges_[i];
      if (e.tail != v) continue;
      if (!seen[e.head]) {
        seen[e.head] = true;
        pot[e.head] = pot[v] + e.shift;
        tree_edge[i] = true;
        tree_edge[e.reverse] = true;
        stack.push_back(e.head);
      }
    }
  }
  for (int v = 0; v < num_vertices_; ++v)
    if (!seen[v])
      throw std::invalid_argument("quotient graph disconnected at vertex " +
                                  std::to_string(v));
  for (int i = 0; i < num_edges(); ++i) {
    if (tree_edge[i]) continue;
    const Edge& e = edges_[i];
    cycles.push_back(pot[e.tail] + e.shift - pot[e.head]);
  }
  if (!generates_zd(cycles, d_))
    throw std::invalid_argument(
        "lattice not connected: cycle shifts do not generate Z^d");
}

}  // namespace crystal
