// Augmented cellular chain complexes over Q and their reduced Betti numbers.
//
// Boundary matrices are sparse and integral. Ranks are computed exactly by
// fraction-free elimination on arbitrary-precision integers; two elimination
// orders are available so that each can check the other.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "strata/triangulated_space.hpp"

namespace strata {

/// Column-major sparse integer matrix; every column is sorted by row.
struct SparseMatrix {
  int rows = 0;
  std::vector<std::vector<std::pair<int, long>>> columns;

  int cols() const { return static_cast<int>(columns.size()); }
};

/// A cell given by its key and its signed faces (keys one dimension lower).
struct CellSpec {
  std::string key;
  std::vector<std::pair<long, std::string>> faces;
};

class ChainComplex {
 public:
  /// cells_by_dim[d] lists the d-cells. Throws InvalidInput on a missing face
  /// and ConsistencyError when the boundary does not square to zero.
  static ChainComplex build(const std::vector<std::vector<CellSpec>>& cells_by_dim);

  /// Boundary of a cell is the alternating sum of its faces.
  static ChainComplex from_space(const TriangulatedSpace& space);

  /// -1 for the empty complex.
  int top_dimension() const { return static_cast<int>(boundaries_.size()) - 1; }
  std::vector<int> f_vector() const;

  /// boundary(0) is the augmentation onto the single (-1)-cell.
  const SparseMatrix& boundary(int d) const { return boundaries_[d]; }

 private:
  void check_square_zero() const;

  std::vector<SparseMatrix> boundaries_;
};

enum class RankMethod {
  /// Reduce columns left to right against lowest nonzero rows.
  column_reduction,
  /// Eliminate rows, sparsest first, pivoting on their first column.
  row_elimination,
};

long matrix_rank(const SparseMatrix& m, RankMethod method = RankMethod::column_reduction);

/// Reduced Betti numbers, indexed from -1 to the top dimension.
class BettiVector {
 public:
  BettiVector() = default;
  explicit BettiVector(std::map<int, long> values);

  /// Reduced homology of the empty space: one class in degree -1.
  static BettiVector empty_space();
  /// Reduced homology of a point: zero everywhere.
  static BettiVector point();

  long operator[](int i) const;
  const std::map<int, long>& values() const { return values_; }
  bool is_zero() const;
  std::string to_string() const;

  bool operator==(const BettiVector& other) const;

 private:
  std::map<int, long> values_;
};

/// With `cross_check`, every rank is computed both ways and a disagreement
/// raises ConsistencyError.
BettiVector reduced_betti(const ChainComplex& c, bool cross_check = false);

/// Alternating sum of cell counts in dimensions >= 0.
long euler_characteristic(const ChainComplex& c);

/// 1 + sum_i (-1)^i b_i over i >= -1; equals the Euler characteristic.
long euler_from_betti(const BettiVector& b);

}  // namespace strata
