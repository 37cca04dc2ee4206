// Discrete Morse matchings on triangulated spaces: verification of acyclic
// matchings, the unique-insertion matching driven by a vertex scheme, the
// cone matching, and the collapsibility certificates built from them.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strata/forests.hpp"
#include "strata/triangulated_space.hpp"
#include "strata/xspace.hpp"

namespace strata {

struct MorseMatching {
  /// (cell, coface) with dim(coface) = dim(cell) + 1.
  std::vector<std::pair<CellRef, CellRef>> pairs;
  /// domain[d][id] marks the cells that must be matched.
  std::vector<std::vector<char>> domain;
};

/// Domain of every cell not induced by the marked vertices.
std::vector<std::vector<char>> complement_domain(const TriangulatedSpace& space, const std::vector<char>& in_sub);

struct MatchingCheck {
  bool covers = true;
  bool perfect = true;
  bool acyclic = true;
  int matched_pairs = 0;
  /// Cells of the whole space left unmatched.
  int critical = 0;
  /// Pairs in an order in which the collapses can be performed.
  std::vector<std::pair<CellRef, CellRef>> collapse_order;
  std::string witness;

  bool ok() const { return covers && perfect && acyclic; }
};

/// Throws InvalidInput on a pair that is not a cover relation.
MatchingCheck check_matching(const TriangulatedSpace& space, const MorseMatching& m);

/// Perfect on its domain, made of covers, and acyclic.
bool verify_acyclic(const TriangulatedSpace& space, const MorseMatching& m);

/// Vertex order is the vertex id order of the space. Every vertex v belongs
/// to the class of anchor[v], and anchors are exactly the vertices of V'.
struct VertexScheme {
  std::vector<char> in_sub;
  std::vector<int> anchor;
};

struct AlephResult {
  MorseMatching matching;
  MatchingCheck check;
  /// xi(phi(s)) = xi(s) + 1 and xi(s') >= xi(phi(s)) for matched s' below phi(s).
  bool xi_monotone = true;
};

/// Throws ConsistencyError naming the offending cell when the insertion is
/// missing or not unique, or when the scheme is malformed.
AlephResult build_aleph_matching(const TriangulatedSpace& space, const VertexScheme& scheme);

/// Pairs every cell s without `apex` (restricted to `restrict_to_vertices`
/// when nonempty) with its unique coface s + apex. Throws ConsistencyError
/// when some cell has no such coface or several.
MorseMatching cone_matching(const TriangulatedSpace& space, int apex, const std::vector<char>& restrict_to_vertices = {});

/// gamma_k(mu) is in Lambda for every mu in Lambda. Throws InvalidInput if
/// Lambda contains (1^n) or (n).
bool check_condition_ck(const std::vector<NumberPartition>& family, int k);

/// Join types of lambda other than (n).
std::vector<NumberPartition> arnold_family(const NumberPartition& lambda);
/// Every tau with lambda ⊢ tau, tau != (n).
std::vector<NumberPartition> refinement_closure(const NumberPartition& lambda);
/// {tau ⊢ n : r <= l(tau) <= n-1}; r = 2 and r = 3 are the classical cases.
std::vector<NumberPartition> length_family(int n, int r);

struct CollapseCertificate {
  int k = 0;
  NumberPartition mu;
  std::vector<int> f_vector;
  std::vector<int> k_f_vector;
  /// "simplex" or "cone".
  std::string k_shape;
  int apex = -1;
  int matched = 0;
  int critical = 0;
  bool acyclic = false;
  bool perfect = false;
  bool xi_monotone = false;
  /// Every insertion agrees with the forest obtained by adding a gamma_k level.
  bool insertion_agrees = false;
  bool betti_zero = false;
  BettiVector betti;

  bool ok() const {
    return acyclic && perfect && xi_monotone && insertion_agrees && betti_zero && critical == 1;
  }
};

/// Requires 2 <= k < n, Condition C_k, (1^n),(n) not in Lambda, mu in
/// Lambda or mu = (n), and a nonempty space (InvalidInput otherwise).
CollapseCertificate collapse_pipeline(const std::vector<NumberPartition>& family, const NumberPartition& mu, int k,
                                      const Guards& guards = {});

struct ConeCertificate {
  NumberPartition lambda;
  NumberPartition mu;
  /// False when mu is not a join type; the space is then a point, which is
  /// its own apex.
  bool reachable = true;
  std::vector<int> f_vector;
  int apex = -1;
  int matched = 0;
  int critical = 0;
  bool acyclic = false;
  bool perfect = false;
  bool betti_zero = false;
  BettiVector betti;

  bool ok() const { return acyclic && perfect && betti_zero && critical == 1; }
};

/// Requires lambda generic, lambda ⊢ mu and lambda != mu.
ConeCertificate generic_cone_matching(const NumberPartition& lambda, const NumberPartition& mu,
                                      const Guards& guards = {});

/// Vertex obtained by splitting every leaf of a rank-0 forest into k's and 1's.
MarkedForest gamma_vertex(const MarkedForest& v, int k);

}  // namespace strata
