#ifndef CRYSTAL_CATALOG_HPP
#define CRYSTAL_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "crystal/harmonic.hpp"
#include "crystal/quotient_graph.hpp"

namespace crystal {

/// A lattice as loaded from the catalog or a file: quotient graph, exact
/// basis, and optionally explicit (possibly non-harmonic) positions.
struct LatticeSpec {
  std::string name;
  QuotientGraph graph;
  DenseMatrix<Exact> basis;
  std::optional<DenseMatrix<Exact>> override_positions;
};

/// Built-in lattices: line, line2, square, square-skew, hexagonal, kagome.
LatticeSpec catalog_lattice(const std::string& name);
std::vector<std::string> catalog_names();

/// Loads a lattice description file.  Lines: `dimension d`, `vertices n`,
/// `edge tail head s1..sd` (unoriented, auto-doubled), `basis x1..xd` (one
/// basis vector per line), optional `position x1..xd` (one per vertex,
/// marks the realization as overridden).  `#` starts a comment.
LatticeSpec load_lattice_file(const std::string& path);

/// Resolves a catalog name or a path to a lattice file.
LatticeSpec resolve_lattice(const std::string& name_or_path);

/// Exact realization: solved harmonically, or built from the override
/// positions when the spec carries them.
RealizationX exact_realization(const LatticeSpec& spec);

}  // namespace crystal

#endif
