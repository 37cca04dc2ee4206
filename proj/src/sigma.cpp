#include "strata/sigma.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "strata/errors.hpp"
#include "strata/quotient_oracle.hpp"
#include "strata/xspace.hpp"

namespace strata {

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers; rethrows the
// first failure.
template <typename Job>
void parallel_for(std::size_t count, int threads, Job job) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

BettiVector aggregate(const std::vector<SigmaTerm>& terms) {
  std::map<int, long> sum;
  for (const auto& t : terms) {
    for (const auto& [i, b] : t.betti.values()) sum[i + t.shift] += b;
  }
  return BettiVector(std::move(sum));
}

SigmaReport betti_sigma(const NumberPartition& lambda, const SigmaOptions& options) {
  if (lambda.empty()) throw InvalidInput("lambda must be nonempty");
  SigmaReport report;
  report.lambda = lambda;
  auto mus = coarsenings(lambda);
  report.terms.resize(mus.size());

  parallel_for(mus.size(), options.threads, [&](std::size_t i) {
    auto x = build_x_space(lambda, mus[i], ForestModel::join_closed, options.guards, options.cross_check_ranks);
    auto& t = report.terms[i];
    t.mu = mus[i];
    t.empty = x.empty;
    t.reachable = x.reachable;
    t.f_vector = x.space.f_vector();
    t.betti = x.betti;
    t.shift = 2 * mus[i].length() + 1;
  });

  if (bell_number(lambda.total()) <= options.guards.max_bell) {
    auto pl = build_pi_lambda(lambda, options.guards);
    for (const auto& t : report.terms) {
      if (t.empty) continue;
      if (pl.contains(consecutive_partition(t.mu)) != t.reachable) {
        throw ConsistencyError("reachability of " + t.mu.to_string() + " disagrees with the lattice of " +
                               lambda.to_string());
      }
    }
    report.reachability_cross_checked = true;
  }
  report.betti = aggregate(report.terms);
  return report;
}

bool vanishing_check(const SigmaReport& report) {
  const int top = 2 * report.lambda.length();
  if (report.betti[top] != 1) return false;
  for (const auto& [i, b] : report.betti.values()) {
    if (i != top && (i < 3 || i > top)) return false;
  }
  return true;
}

bool is_top_class_only(const SigmaReport& report) {
  return report.betti == BettiVector(std::map<int, long>{{2 * report.lambda.length(), 1}});
}

std::vector<ArnoldCase> verify_arnold(int n_max, const SigmaOptions& options) {
  std::vector<ArnoldCase> out;
  for (int n = 2; n <= n_max; ++n) {
    for (int k = 2; k <= n; ++k) {
      for (int m = 1; k * m <= n; ++m) {
        ArnoldCase c;
        c.lambda = NumberPartition::special(k, m, n);
        c.k = k;
        c.m = m;
        auto report = betti_sigma(c.lambda, options);
        c.betti = report.betti;
        c.pass = is_top_class_only(report);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace strata
