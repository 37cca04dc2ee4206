#include <doctest.h>

#include <set>

#include "strata/errors.hpp"
#include "strata/ppos.hpp"

using namespace strata;

namespace {

NumberPartition P(const char* s) { return NumberPartition::parse(s); }
BracketedPartition B(const char* s) { return BracketedPartition::parse(s); }

}  // namespace

TEST_SUITE("ppos") {
  TEST_CASE("bracketed partitions") {
    CHECK(B("(1,1,1)(3,1)(2,2)") == B("(1,1,1)(2,2)(3,1)"));
    CHECK(B("(1,1,1)(3,1)(2,2)") == B("(1,1,1)(2,2)(1,3)"));
    CHECK(B("(1,1,1)(3,1)(2,2)") != B("(3)(2,1,1)(2,1,1)"));
    CHECK(B("(1,1,1)(3,1)(2,2)").to_string() == "(3,1)(2,2)(1,1,1)");
    CHECK(B("(3,1)(2,2)(1,1,1)").underlying() == P("3,2,2,1,1,1,1"));
    CHECK(B("(3,1)(2,2)(1,1,1)").brackets() == P("4,4,3"));
    CHECK_THROWS_AS(B("(3,1"), InvalidInput);
    CHECK_THROWS_AS(B("3,1"), InvalidInput);

    // every scramble of groups and of entries gives the same element
    std::vector<std::vector<int>> groups{{3, 1}, {2, 2}, {1, 1, 1}, {4}};
    const BracketedPartition ref(groups);
    std::vector<int> order{0, 1, 2, 3};
    do {
      std::vector<std::vector<int>> g;
      for (int i : order) {
        auto grp = groups[i];
        std::reverse(grp.begin(), grp.end());
        g.push_back(grp);
      }
      CHECK(BracketedPartition(g) == ref);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  TEST_CASE("P for (2,1^9) under (4,4,3)") {
    auto p = build_p_poset(P("2,1,1,1,1,1,1,1,1,1"), P("4,4,3"));
    auto has = [&](const BracketedPartition& b) { return std::binary_search(p.elements.begin(), p.elements.end(), b); };
    CHECK(has(B("(1,1,1)(3,1)(2,2)")));
    CHECK(has(B("(3)(2,1,1)(2,1,1)")));
    CHECK(std::set<BracketedPartition>(p.elements.begin(), p.elements.end()).size() == p.elements.size());
  }

  TEST_CASE("bracket refinement") {
    CHECK(bracket_refines(B("(2,1,1)(3)"), B("(2,2)(3)")));
    CHECK(bracket_refines(B("(1,1,1,1)(2,1)"), B("(2,1,1)(3)")));
    CHECK_FALSE(bracket_refines(B("(2,2)(3)"), B("(2,1,1)(3)")));
    CHECK_FALSE(bracket_refines(B("(2,2)(3)"), B("(2,2)(3)")));
    CHECK_FALSE(bracket_refines(B("(3,1)(3)"), B("(4)(2,1)")));
  }

  TEST_CASE("components") {
    PPoset empty{P("2,1"), P("3"), {}, {}};
    CHECK(beta0_of_order_complex(empty) == 0);
    PPoset chain{P("1,1,1,1"), P("4"), {B("(1,1,1,1)"), B("(2,1,1)"), B("(2,2)")}, {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(beta0_of_order_complex(chain) == 1);

    auto single = build_p_poset(P("2,1,1"), P("3,1"));
    CHECK(single.elements.size() == 1);
    CHECK(beta0_of_order_complex(single) == 1);
    CHECK_THROWS_AS(build_p_poset(P("2,1"), P("2,1")), InvalidInput);
    CHECK_THROWS_AS(build_p_poset(P("3,1"), P("2,2")), InvalidInput);
  }

  TEST_CASE("counterexample") {
    auto p = build_p_poset(P("7,6,4,3,2,1"), P("10,8,5"));
    CHECK(beta0_of_order_complex(p) >= 2);
    auto r = compare_beta0(P("7,6,4,3,2,1"), P("10,8,5"));
    CHECK(r.ok());
    CHECK(r.beta0_poset >= 2);
    CHECK(r.beta0_poset == r.beta0_forest);
  }

  TEST_CASE("generic lambda gives one component") {
    for (const char* l : {"4,2,1", "3,3", "5,2,1"}) {
      for (const auto& mu : coarsenings(P(l))) {
        if (mu == P(l)) continue;
        auto r = compare_beta0(P(l), mu);
        CHECK(r.beta0_poset == 1);
        CHECK(r.beta0_forest == 1);
      }
    }
  }

  TEST_CASE("beta0 agreement, n <= 7") {
    for (int n = 2; n <= 7; ++n) {
      for (const auto& l : all_partitions(n)) {
        for (const auto& mu : coarsenings(l)) {
          if (mu == l) continue;
          INFO(l.to_string(), " | ", mu.to_string());
          auto r = compare_beta0(l, mu);
          CHECK(r.ok());
          auto rank0 = enumerate_forests(lambda_admissible(l), mu, 0);
          CHECK(static_cast<std::size_t>(r.elements) == rank0.size());
        }
      }
    }
  }
}
