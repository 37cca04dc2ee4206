// The triangulated spaces X_{lambda,mu} and X_{Lambda,mu} in the forest model.

#pragma once

#include <optional>

#include "strata/chain_complex.hpp"
#include "strata/config.hpp"
#include "strata/forests.hpp"
#include "strata/triangulated_space.hpp"

namespace strata {

struct XSpace {
  NumberPartition mu;
  /// lambda == mu: the space is empty.
  bool empty = false;
  /// False when no element of type mu exists above the bottom; the space is
  /// then a point by convention and carries no forest cells.
  bool reachable = true;
  ForestCells cells;
  TriangulatedSpace space;
  ChainComplex complex;
  BettiVector betti;
};

/// Chain complex whose boundary is the signed sum of level deletions.
ChainComplex forest_complex(const ForestCells& cells);

/// Requires lambda ⊢ mu (InvalidInput otherwise).
XSpace build_x_space(const NumberPartition& lambda, const NumberPartition& mu,
                     ForestModel model = ForestModel::join_closed, const Guards& guards = {},
                     bool cross_check_ranks = false);

/// Cells are forests with roots mu whose lower levels satisfy `admissible`.
XSpace build_family_space(const Admissible& admissible, const NumberPartition& mu, const Guards& guards = {},
                          bool cross_check_ranks = false);

}  // namespace strata
