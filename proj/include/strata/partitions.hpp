// Number partitions and set partitions of [n].
//
// A NumberPartition is kept in canonical (weakly decreasing) order, so
// multiset equality is plain sequence equality. A SetPartition is stored as
// a restricted growth string: element i (0-based) carries the index of its
// block, blocks being numbered in order of their smallest element.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

class NumberPartition {
 public:
  NumberPartition() = default;

  /// Sorts `parts` into canonical order. Throws std::invalid_argument if a
  /// part is not positive.
  explicit NumberPartition(std::vector<int> parts);

  /// Parses "7,6,4,3,2,1" (any order, optional spaces).
  static NumberPartition parse(std::string_view text);

  /// (k^m, 1^(n-km))
  static NumberPartition special(int k, int m, int n);

  /// (value^count)
  static NumberPartition repeated(int value, int count);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  std::string to_string() const;

  auto operator<=>(const NumberPartition&) const = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

class SetPartition {
 public:
  SetPartition() = default;

  /// Blocks use 1-based elements and must cover [n] exactly once.
  static SetPartition from_blocks(const std::vector<std::vector<int>>& blocks);

  /// `block_of[i]` is an arbitrary block tag for element i+1.
  static SetPartition from_tags(const std::vector<int>& block_of);

  static SetPartition discrete(int n);
  static SetPartition single_block(int n);

  /// Accepts "[[1,2,3],[4,5]]".
  static SetPartition parse(std::string_view text);

  int n() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return blocks_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  int block_of(int element) const { return rgs_[element - 1]; }

  /// Sorted blocks of sorted 1-based elements.
  std::vector<std::vector<int>> blocks() const;

  std::string to_string() const;

  auto operator<=>(const SetPartition&) const = default;

 private:
  std::vector<std::uint8_t> rgs_;
  int blocks_ = 0;
};

NumberPartition type_of(const SetPartition& pi);

/// lambda ⊢ mu: the parts of lambda can be grouped so that the group sums are
/// the parts of mu. Throws std::invalid_argument if the totals differ.
bool refines_number(const NumberPartition& lambda, const NumberPartition& mu);

/// Every block of `pi` lies inside a block of `coarse`.
bool refines_set(const SetPartition& pi, const SetPartition& coarse);

/// All mu with lambda ⊢ mu, including lambda and (n), in ascending order.
std::vector<NumberPartition> coarsenings(const NumberPartition& lambda);

/// Finest common coarsening.
SetPartition join(const SetPartition& a, const SetPartition& b);

/// No two different sub-multisets of parts have the same sum.
bool is_generic(const NumberPartition& lambda);

/// Splits every part into as many k's as fit, plus 1's. Throws for k < 2.
NumberPartition gamma_k(const NumberPartition& mu, int k);

/// tau = (k^a, 1^b) for some a, b.
bool is_special(const NumberPartition& tau, int k);

/// Whether some set partition of type tau is a join of set partitions of
/// type lambda, i.e. tau is the type of a non-bottom element of the
/// intersection lattice of the orbit arrangement of lambda. Decided on
/// number partitions alone: a block of size s >= 2 is a join of
/// lambda-blocks iff some grouping of lambda into tau gives that block a
/// group containing a part >= 2 (groups made only of 1's never merge).
bool is_join_type(const NumberPartition& lambda, const NumberPartition& tau);

/// All partitions of n in descending lexicographic order.
std::vector<NumberPartition> all_partitions(int n);

/// All partitions of n as raw descending part vectors, descending order.
std::vector<std::vector<int>> partitions_of(int n);

/// Distinct sub-multisets of `parts` (descending) that sum to `target`.
std::vector<std::vector<int>> sub_multisets_with_sum(const std::vector<int>& parts, int target);

/// Removes the multiset `sub` from `parts` (both descending). Throws if
/// `sub` is not contained in `parts`.
std::vector<int> multiset_difference(const std::vector<int>& parts, const std::vector<int>& sub);

std::string join_ints(const std::vector<int>& values, std::string_view separator = ",");

}  // namespace strata
