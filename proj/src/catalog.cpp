#include "crystal/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crystal {

namespace {

Eigen::VectorXi shift_of(std::initializer_list<int> v) {
  Eigen::VectorXi s(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) s(i++) = x;
  return s;
}

DenseMatrix<Exact> basis_1d() {
  DenseMatrix<Exact> U(1, 1);
  U(0, 0) = Exact(1);
  return U;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"line", "line2", "square", "square-skew", "hexagonal", "kagome"};
}

LatticeSpec catalog_lattice(const std::string& name) {
  const Rational half(1, 2);
  if (name == "line") {
    LatticeSpec s{name, QuotientGraph(1, 1), basis_1d(), std::nullopt};
    s.graph.add_edge(0, 0, shift_of({1}));
    return s;
  }
  if (name == "line2") {
    // Two-vertex quotient of the 1D lattice under the index-2 action
    // sigma.x = 2 sigma + x.  The stated embedding {0, -1} is kept as an
    // override; it is not harmonic (the solved positions are {0, 1/2}).
    LatticeSpec s{name, QuotientGraph(1, 2), basis_1d(), std::nullopt};
    s.graph.add_edge(0, 1, shift_of({0}));
    s.graph.add_edge(1, 0, shift_of({1}));
    DenseMatrix<Exact> pos(2, 1);
    pos(0, 0) = Exact(0);
    pos(1, 0) = Exact(-1);
    s.override_positions = pos;
    return s;
  }
  if (name == "square" || name == "square-skew") {
    DenseMatrix<Exact> U(2, 2);
    U(0, 0) = Exact(1);
    U(1, 0) = Exact(0);
    if (name == "square") {
      U(0, 1) = Exact(0);
      U(1, 1) = Exact(1);
    } else {
      U(0, 1) = Exact(half);
      U(1, 1) = Exact(1);
    }
    LatticeSpec s{name, QuotientGraph(2, 1), U, std::nullopt};
    s.graph.add_edge(0, 0, shift_of({1, 0}));
    s.graph.add_edge(0, 0, shift_of({0, 1}));
    return s;
  }
  if (name == "hexagonal" || name == "kagome") {
    DenseMatrix<Exact> U(2, 2);
    U(0, 0) = Exact::sqrt3();
    U(1, 0) = Exact(0);
    U(0, 1) = Exact(Rational(0), half);  // sqrt3/2
    U(1, 1) = Exact(Rational(3, 2));
    if (name == "hexagonal") {
      LatticeSpec s{name, QuotientGraph(2, 2), U, std::nullopt};
      s.graph.add_edge(0, 1, shift_of({0, 0}));
      s.graph.add_edge(0, 1, shift_of({1, 0}));
      s.graph.add_edge(0, 1, shift_of({1, -1}));
      return s;
    }
    LatticeSpec s{name, QuotientGraph(2, 3), U, std::nullopt};
    s.graph.add_edge(0, 1, shift_of({0, 0}));
    s.graph.add_edge(0, 1, shift_of({1, 0}));
    s.graph.add_edge(0, 2, shift_of({0, 0}));
    s.graph.add_edge(0, 2, shift_of({0, 1}));
    s.graph.add_edge(1, 2, shift_of({0, 0}));
    s.graph.add_edge(1, 2, shift_of({-1, 1}));
    return s;
  }
  throw std::invalid_argument("unknown catalog lattice: " + name);
}

LatticeSpec load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lattice file: " + path);
  int d = -1, n = -1;
  struct RawEdge {
    int tail, head;
    std::vector<std::string> shift;
  };
  std::vector<RawEdge> raw_edges;
  std::vector<std::vector<std::string>> basis_rows, position_rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (key == "dimension") {
      if (!(ss >> d) || d < 1) fail("bad dimension");
    } else if (key == "vertices") {
      if (!(ss >> n) || n < 1) fail("bad vertex count");
    } else if (key == "edge") {
      RawEdge e;
      if (!(ss >> e.tail >> e.head)) fail("bad edge endpoints");
      std::string tok;
      while (ss >> tok) e.shift.push_back(tok);
      raw_edges.push_back(std::move(e));
    } else if (key == "basis" || key == "position") {
      std::vector<std::string> row;
      std::string tok;
      while (ss >> tok) row.push_back(tok);
      (key == "basis" ? basis_rows : position_rows).push_back(std::move(row));
    } else {
      fail("unknown key: " + key);
    }
  }
  if (d < 1 || n < 1)
    throw std::runtime_error(path + ": dimension and vertices are required");
  if (static_cast<int>(basis_rows.size()) != d)
    throw std::runtime_error(path + ": expected " + std::to_string(d) +
                             " basis rows");
  LatticeSpec spec{std::filesystem::path(path).stem().string(),
                   QuotientGraph(d, n), DenseMatrix<Exact>(d, d), std::nullopt};
  for (size_t i = 0; i < raw_edges.size(); ++i) {
    const RawEdge& e = raw_edges[i];
    if (static_cast<int>(e.shift.size()) != d)
      throw std::runtime_error(path + ": edge " + std::to_string(i) +
                               " has wrong shift dimension");
    Eigen::VectorXi s(d);
    for (int j = 0; j < d; ++j) s(j) = std::stoi(e.shift[j]);
    spec.graph.add_edge(e.tail, e.head, s);
  }
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(basis_rows[i].size()) != d)
      throw std::runtime_error(path + ": basis row has wrong length");
    for (int j = 0; j < d; ++j)
      spec.basis(j, i) = parse_exact(basis_rows[i][j]);  // row i is u_i
  }
  if (!position_rows.empty()) {
    if (static_cast<int>(position_rows.size()) != n)
      throw std::runtime_error(path + ": expected one position row per vertex");
    DenseMatrix<Exact> pos(n, d);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(position_rows[i].size()) != d)
        throw std::runtime_error(path + ": position row has wrong length");
      for (int j = 0; j < d; ++j) pos(i, j) = parse_exact(position_rows[i][j]);
    }
    spec.override_positions = pos;
  }
  spec.graph.validate();
  return spec;
}

LatticeSpec resolve_lattice(const std::string& name_or_path) {
  for (const std::string& n : catalog_names())
    if (n == name_or_path) return catalog_lattice(n);
  return load_lattice_file(name_or_path);
}

RealizationX exact_realization(const LatticeSpec& spec) {
  if (spec.override_positions)
    return make_realization<Exact>(spec.graph, spec.basis,
                                   *spec.override_positions);
  return solve_harmonic<Exact>(spec.graph, spec.basis);
}

}  // namespace crystal
