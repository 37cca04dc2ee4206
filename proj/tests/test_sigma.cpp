#include <doctest.h>

#include "oracles.hpp"
#include "strata/errors.hpp"
#include "strata/sigma.hpp"

using namespace strata;

namespace {

NumberPartition P(const char* s) { return NumberPartition::parse(s); }

BettiVector only(int degree) { return BettiVector(std::map<int, long>{{degree, 1}}); }

}  // namespace

TEST_SUITE("sigma") {
  TEST_CASE("small strata") {
    CHECK(betti_sigma(P("2,1")).betti == only(4));
    for (int n = 2; n <= 6; ++n) {
      auto r = betti_sigma(NumberPartition({n}));
      CHECK(r.betti == only(2));
      CHECK(is_top_class_only(r));
      CHECK(vanishing_check(r));
    }
    CHECK(betti_sigma(P("4,2,1")).betti == only(6));
    CHECK(betti_sigma(P("2,2,1,1")).betti == only(8));
    CHECK(betti_sigma(P("3,3")).betti == only(4));
    CHECK_THROWS_AS(betti_sigma(NumberPartition()), InvalidInput);
  }

  TEST_CASE("term bookkeeping") {
    auto r = betti_sigma(P("3,1,1"));
    CHECK(r.reachability_cross_checked);
    CHECK(r.terms.size() == coarsenings(P("3,1,1")).size());
    for (const auto& t : r.terms) {
      CHECK(t.shift == 2 * t.mu.length() + 1);
      if (t.mu == P("3,1,1")) {
        CHECK(t.empty);
        CHECK(t.betti == BettiVector::empty_space());
      }
      if (t.mu == P("3,2")) {
        CHECK_FALSE(t.reachable);
        CHECK(t.betti.is_zero());
      }
    }
  }

  TEST_CASE("aggregation against the independent quotient oracle, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
      for (const auto& l : all_partitions(n)) {
        auto r = betti_sigma(l);
        auto terms = r.terms;
        for (auto& t : terms) {
          if (t.empty) continue;
          auto q = oracle::quotient(l.parts(), t.mu.parts());
          CHECK(q.reachable == t.reachable);
          t.betti = q.reachable ? BettiVector(q.betti) : BettiVector::point();
        }
        CHECK(aggregate(terms) == r.betti);
      }
    }
  }

  TEST_CASE("threads give the same answer") {
    SigmaOptions one;
    SigmaOptions four;
    four.threads = 4;
    four.cross_check_ranks = true;
    for (const char* l : {"2,2,1,1", "3,2,1", "2,1,1,1,1,1"}) CHECK(betti_sigma(P(l), one).betti == betti_sigma(P(l), four).betti);
  }

  TEST_CASE("special strata (k^m,1^(n-km)), n <= 6") {
    auto cases = verify_arnold(6);
    int count = 0;
    for (int n = 2; n <= 6; ++n) {
      for (int k = 2; k <= n; ++k) count += n / k;
    }
    CHECK(static_cast<int>(cases.size()) == count);
    for (const auto& c : cases) {
      INFO(c.lambda.to_string());
      CHECK(c.pass);
      CHECK(c.betti == only(2 * c.lambda.length()));
    }
  }

  TEST_CASE("vanishing, n <= 7") {
    for (int n = 1; n <= 7; ++n) {
      for (const auto& l : all_partitions(n)) {
        INFO(l.to_string());
        auto r = betti_sigma(l);
        CHECK(vanishing_check(r));
        if (is_generic(l)) CHECK(is_top_class_only(r));
      }
    }
  }

  TEST_CASE("counterexample stratum") {
    SigmaOptions opt;
    opt.threads = 4;
    auto r = betti_sigma(P("7,6,4,3,2,1"), opt);
    CHECK(r.betti[7] >= 1);
    CHECK(r.betti[12] == 1);
    CHECK(vanishing_check(r));
    CHECK_FALSE(is_top_class_only(r));
  }
}
