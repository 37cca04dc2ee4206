// Posets of bracketed partitions: the rank-0 forests with roots mu, ordered
// by refinement inside matching brackets. Their comparability graph has the
// same connected components as the forest model of X_{lambda,mu}.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "strata/config.hpp"
#include "strata/forests.hpp"
#include "strata/partitions.hpp"

namespace strata {

class BracketedPartition {
 public:
  BracketedPartition() = default;
  /// Canonicalizes: every group descending, groups by (sum, parts) descending.
  explicit BracketedPartition(std::vector<std::vector<int>> groups);

  /// Accepts "(3,1)(2,2)(1,1,1)".
  static BracketedPartition parse(std::string_view text);
  /// A rank-0 forest read as its roots' children.
  static BracketedPartition from_vertex(const MarkedForest& vertex);

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  /// Concatenation of the groups.
  NumberPartition underlying() const;
  /// Group sums.
  NumberPartition brackets() const;
  std::string to_string() const;

  auto operator<=>(const BracketedPartition&) const = default;

 private:
  std::vector<std::vector<int>> groups_;
};

/// a strictly refines b with brackets matched by equal sums.
bool bracket_refines(const BracketedPartition& a, const BracketedPartition& b);

struct PPoset {
  NumberPartition lambda;
  NumberPartition mu;
  /// Sorted canonical elements.
  std::vector<BracketedPartition> elements;
  /// (i, j) with elements[i] strictly finer than elements[j].
  std::vector<std::pair<int, int>> relations;
};

/// Requires lambda ⊢ mu and lambda != mu. Elements use the same level
/// predicate as the forest model.
PPoset build_p_poset(const NumberPartition& lambda, const NumberPartition& mu,
                     ForestModel model = ForestModel::join_closed);

/// Connected components of the comparability graph; 0 for the empty poset.
int beta0_of_order_complex(const PPoset& p);

struct Beta0Report {
  NumberPartition lambda;
  NumberPartition mu;
  int elements = 0;
  int relations = 0;
  int beta0_poset = 0;
  int beta0_forest = 0;
  /// Poset elements and rank-0 forests coincide.
  bool vertices_match = true;
  /// Comparable pairs and forest edges join the same vertex pairs.
  bool edges_match = true;

  bool ok() const { return beta0_poset == beta0_forest && vertices_match && edges_match; }
};

/// Throws ConsistencyError when the two component counts differ.
Beta0Report compare_beta0(const NumberPartition& lambda, const NumberPartition& mu, const Guards& guards = {});

}  // namespace strata
