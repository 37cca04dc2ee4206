// Reduced Betti numbers of the strata Sigma_lambda, assembled from the spaces
// X_{lambda,mu} over all coarsenings mu of lambda:
//   b_i(Sigma_lambda) = sum over mu of b_{i - 2 l(mu) - 1}(X_{lambda,mu}).

#pragma once

#include <map>
#include <vector>

#include "strata/chain_complex.hpp"
#include "strata/config.hpp"
#include "strata/partitions.hpp"

namespace strata {

struct SigmaTerm {
  NumberPartition mu;
  /// mu == lambda: X is empty and contributes 1 in degree 2 l(lambda).
  bool empty = false;
  /// mu is a join type; otherwise X is a point and contributes nothing.
  bool reachable = true;
  std::vector<int> f_vector;
  BettiVector betti;
  int shift = 0;
};

struct SigmaReport {
  NumberPartition lambda;
  std::vector<SigmaTerm> terms;
  BettiVector betti;
  /// Reachability was also confirmed against the brute-force lattice.
  bool reachability_cross_checked = false;
};

struct SigmaOptions {
  Guards guards;
  int threads = 1;
  /// Compare every rank with the second elimination order.
  bool cross_check_ranks = false;
};

SigmaReport betti_sigma(const NumberPartition& lambda, const SigmaOptions& options = {});

/// Sums shifted term Betti vectors; terms must already carry their shifts.
BettiVector aggregate(const std::vector<SigmaTerm>& terms);

/// b_{2l(lambda)} = 1 and every other nonzero degree lies in [3, 2l(lambda)].
bool vanishing_check(const SigmaReport& report);

/// b_{2l(lambda)} = 1 and nothing else.
bool is_top_class_only(const SigmaReport& report);

struct ArnoldCase {
  NumberPartition lambda;
  int k = 0;
  int m = 0;
  BettiVector betti;
  bool pass = false;
};

/// Every (k^m, 1^(n-km)) with 2 <= n <= n_max, k >= 2, m >= 1.
std::vector<ArnoldCase> verify_arnold(int n_max, const SigmaOptions& options = {});

}  // namespace strata
