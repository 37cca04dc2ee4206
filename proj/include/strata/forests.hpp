// Marked forests: graded rooted forests whose vertices carry positive labels,
// every inner label being the sum of its children's labels. A marked forest
// of rank r has levels 0 (leaves) .. r+1 (roots); level sizes strictly
// decrease towards the roots.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "strata/config.hpp"
#include "strata/partitions.hpp"

namespace strata {

/// Raw level-indexed forest. `labels[h]` lists the labels of the vertices of
/// height h; `parents[h][j]` is the index of the parent of vertex (h, j) in
/// level h+1. The top level has no parents.
struct ForestLayout {
  std::vector<std::vector<int>> labels;
  std::vector<std::vector<int>> parents;

  bool operator==(const ForestLayout&) const = default;
};

/// All structural invariants of a marked forest: rank >= 0, parents in range,
/// every vertex above the leaves has children, inner labels are child sums,
/// level sizes strictly increase from the roots to the leaves.
bool validate(const ForestLayout& layout);

class MarkedForest {
 public:
  /// Validates and canonicalizes. Throws InvalidInput on an invalid layout.
  explicit MarkedForest(const ForestLayout& layout);

  int rank() const { return static_cast<int>(layout_.labels.size()) - 2; }
  int total() const;
  const ForestLayout& layout() const { return layout_; }

  /// Canonical encoding; equal iff the forests are isomorphic.
  const std::string& key() const { return key_; }

  NumberPartition level_partition(int height) const;
  NumberPartition roots() const { return level_partition(rank() + 1); }

  bool operator==(const MarkedForest& other) const { return key_ == other.key_; }
  bool operator<(const MarkedForest& other) const { return key_ < other.key_; }

 private:
  ForestLayout layout_;
  std::string key_;
};

inline const std::string& canonical_key(const MarkedForest& f) { return f.key(); }

/// Removes level i (0 <= i <= rank) and reconnects level i+1 to level i-1.
/// Requires rank >= 1.
MarkedForest delete_level(const MarkedForest& f, int i);

/// Signed sum of level deletions, combined on canonical keys. Zero
/// coefficients are dropped. Rank 0 forests have no forest boundary.
std::vector<std::pair<long, MarkedForest>> boundary(const MarkedForest& f);

/// The rank-0 forest formed by level i and the roots.
MarkedForest level_vertex(const MarkedForest& f, int i);

using Admissible = std::function<bool(const NumberPartition&)>;

/// Level predicate for (lambda,mu)-forests. Memoized, safe to share.
Admissible lambda_admissible(const NumberPartition& lambda, ForestModel model = ForestModel::join_closed);

/// Level predicate tau ∈ family.
Admissible family_admissible(std::vector<NumberPartition> family);

/// All forests of every rank with roots mu and admissible non-root levels,
/// grouped by rank and sorted by canonical key within a rank.
struct ForestCells {
  NumberPartition mu;
  std::vector<std::vector<MarkedForest>> by_rank;

  std::size_t size() const;
  int top_rank() const { return static_cast<int>(by_rank.size()) - 1; }
};

ForestCells enumerate_all_forests(const Admissible& admissible, const NumberPartition& mu, const Guards& guards = {});

/// Isomorphism classes of forests of the given rank with roots mu.
std::vector<MarkedForest> enumerate_forests(const Admissible& admissible, const NumberPartition& mu, int rank,
                                            const Guards& guards = {});

/// Inserts a new level directly below height h: every vertex v of height h
/// gets floor(eta(v)/k) children labeled k and eta(v) mod k children labeled 1.
/// Old vertices below height h must carry only labels k and 1; each old k
/// goes under its own new k, the remaining new k's take k old 1's each and
/// every new 1 takes one old 1. Throws InvalidInput when the lower levels do
/// not fit or the result is not a valid forest.
MarkedForest insert_gamma_level(const MarkedForest& f, int h, int k);

}  // namespace strata
