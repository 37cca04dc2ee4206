// Brute-force ground truth for small n: the join-closed subposet of the
// partition lattice generated by set partitions of type lambda, chains in an
// open interval below pi, their orbits under the stabilizer of pi, and the
// comparison of the resulting quotient complex with the forest model.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "strata/chain_complex.hpp"
#include "strata/config.hpp"
#include "strata/forests.hpp"
#include "strata/partitions.hpp"

namespace strata {

/// Joins of type-lambda set partitions, plus the discrete partition.
struct PiLambda {
  NumberPartition lambda;
  /// Sorted; contains the bottom.
  std::vector<SetPartition> elements;

  bool contains(const SetPartition& p) const;
  std::size_t size() const { return elements.size(); }
};

/// All set partitions of [n] of the given type, sorted.
std::vector<SetPartition> set_partitions_of_type(const NumberPartition& type);

/// Throws GuardExceeded when Bell(n) exceeds the guard.
PiLambda build_pi_lambda(const NumberPartition& lambda, const Guards& guards = {});

/// Independent closure: joins every pair of known elements until nothing new
/// appears. Quadratic per round; for cross-checking only.
std::vector<SetPartition> pairwise_join_closure(const NumberPartition& lambda, const Guards& guards = {});

/// A permutation of {0..n-1}.
using Permutation = std::vector<int>;

SetPartition permute(const Permutation& g, const SetPartition& p);

/// Set partition of type mu whose blocks are runs of consecutive integers,
/// largest first.
SetPartition consecutive_partition(const NumberPartition& mu);

/// The stabilizer of pi in S_n: generated by adjacent transpositions inside
/// blocks and by swaps of neighbouring blocks of equal size.
struct Stabilizer {
  std::vector<Permutation> generators;
  boost::multiprecision::cpp_int order;
};

Stabilizer stabilizer(const SetPartition& pi);

/// Every element of the group generated by `generators` on n points. Throws
/// GuardExceeded above `limit` elements.
std::vector<Permutation> group_elements(const std::vector<Permutation>& generators, int n,
                                        std::size_t limit = 1'000'000);

/// A chain x_1 < ... < x_{r+1}, finest first, of indices into
/// OrbitComplex::elements.
using Chain = std::vector<int>;

/// The quotient of the order complex of the open interval (bottom, pi) by the
/// stabilizer of pi.
struct OrbitComplex {
  SetPartition pi;
  std::vector<SetPartition> elements;
  /// chains[d] holds every chain of d+1 elements.
  std::vector<std::vector<Chain>> chains;
  /// orbit_of[d][c] is the orbit id of chains[d][c].
  std::vector<std::vector<int>> orbit_of;
  /// representatives[d][o] indexes chains[d].
  std::vector<std::vector<int>> representatives;
  /// faces[d][o][i]: orbit id (dimension d-1) of the chain missing element i.
  std::vector<std::vector<std::vector<int>>> faces;

  std::vector<int> orbit_counts() const;
  /// Signed faces keyed by "d:orbit".
  ChainComplex complex() const;
};

/// Requires pi in pl.
OrbitComplex orbit_cells(const PiLambda& pl, const SetPartition& pi);

/// Orbit counts per dimension computed by applying every group element to
/// every chain. Slow; intended for n <= 6.
std::vector<int> orbit_counts_by_group_sweep(const OrbitComplex& oc, std::size_t group_limit = 1'000'000);

/// Height-i vertices are the blocks of x_i, roots are the blocks of pi.
MarkedForest psi_forest_of_chain(const std::vector<SetPartition>& chain, const SetPartition& pi);

struct DimensionComparison {
  int dim = 0;
  int oracle_cells = 0;
  int forest_cells = 0;
  /// Forest cells when every refinement of lambda is allowed as a level.
  int literal_cells = 0;
};

struct OracleReport {
  NumberPartition lambda;
  NumberPartition mu;
  SetPartition pi;
  bool oracle_reachable = true;
  bool forest_reachable = true;
  std::vector<DimensionComparison> dims;
  bool psi_bijective = true;
  bool psi_constant_on_orbits = true;
  bool faces_match = true;
  /// Distinct orbits with the same forest; nonzero would contradict the
  /// bijection.
  int collisions = 0;
  BettiVector oracle_betti;
  BettiVector forest_betti;
  BettiVector literal_betti;
  bool betti_equal = true;
  bool literal_matches = true;
  /// Set when orbits were validated by a full group sweep.
  bool swept = false;
  bool sweep_matches = true;

  bool ok() const;
};

/// `sweep_up_to`: run the full group sweep when n is at most this value.
OracleReport compare_with_forest_model(const NumberPartition& lambda, const NumberPartition& mu,
                                       const Guards& guards = {}, int sweep_up_to = 0);

/// Every pair lambda ⊢ mu ⊢ n with lambda != mu.
std::vector<OracleReport> oracle_sweep(int n, const Guards& guards = {}, int sweep_up_to = 0);

}  // namespace strata
