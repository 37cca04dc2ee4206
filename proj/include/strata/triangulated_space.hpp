// Triangulated spaces: regular CW complexes whose cells are simplices, but
// where a vertex set need not determine a cell. Every cell stores its own
// ordered vertex list and, per vertex, the face obtained by omitting it.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strata/forests.hpp"

namespace strata {

struct Cell {
  /// Ids of 0-cells in the cell's own vertex order.
  std::vector<int> vertices;
  /// faces[i] is the id (one dimension lower) of the face missing vertices[i].
  /// Empty for 0-cells.
  std::vector<int> faces;
};

struct CellRef {
  int dim = 0;
  int id = 0;
  auto operator<=>(const CellRef&) const = default;
};

class TriangulatedSpace {
 public:
  /// Adds the next dimension. Cells of dimension d must have d+1 vertices
  /// and faces referring to the dimension below.
  void add_dimension(std::vector<Cell> cells, std::vector<std::string> labels = {});

  /// Checks face/vertex consistency and builds coface lists. Throws
  /// ConsistencyError on a malformed face.
  void finalize();

  /// -1 for the empty space.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::vector<int> f_vector() const;
  std::size_t cell_count() const;

  const std::vector<Cell>& cells(int dim) const { return cells_[dim]; }
  const Cell& cell(CellRef c) const { return cells_[c.dim][c.id]; }
  const std::string& label(CellRef c) const { return labels_[c.dim][c.id]; }

  /// (coface id, index of the omitted vertex in the coface).
  const std::vector<std::pair<int, int>>& cofaces(CellRef c) const { return cofaces_[c.dim][c.id]; }

  /// Cells all of whose vertices satisfy `keep`, renumbered.
  TriangulatedSpace induced_subcomplex(const std::vector<char>& keep_vertex) const;

 private:
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> cofaces_;
};

/// The triangulated space whose r-cells are the rank-r forests of `cells`.
/// Vertices are the rank-0 forests, numbered by (number of leaves
/// descending, canonical key), so each cell lists its vertices from the leaf
/// level upward in increasing id order. Cell labels are canonical keys.
TriangulatedSpace forest_space(const ForestCells& cells);

}  // namespace strata
