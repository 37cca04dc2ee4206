#include <doctest.h>

#include "oracles.hpp"
#include "strata/errors.hpp"
#include "strata/partitions.hpp"

using namespace strata;

namespace {

NumberPartition P(const char* s) { return NumberPartition::parse(s); }
SetPartition S(const char* s) { return SetPartition::parse(s); }

}  // namespace

TEST_SUITE("partitions") {
  TEST_CASE("canonical form and parsing") {
    CHECK(P("1,3,2").parts() == std::vector<int>{3, 2, 1});
    CHECK(P(" 7, 6,4,3,2,1").to_string() == "7,6,4,3,2,1");
    CHECK(P("7,6,4,3,2,1").total() == 23);
    CHECK(P("2,2,1").length() == 3);
    CHECK_THROWS(P("3,0"));
    CHECK_THROWS(P("a"));
    CHECK(NumberPartition::special(2, 2, 6) == P("2,2,1,1"));
    CHECK(NumberPartition::special(3, 2, 6) == P("3,3"));
    CHECK(S("[[4,5],[1,2,3]]").to_string() == "[[1,2,3],[4,5]]");
    CHECK(S("[[2,1],[3]]") == SetPartition::from_blocks({{3}, {1, 2}}));
  }

  TEST_CASE("type_of") {
    CHECK(type_of(S("[[1,3],[2],[4],[5]]")) == P("2,1,1,1"));
    CHECK(type_of(SetPartition::single_block(6)) == P("6"));
    CHECK(type_of(S("[[1,2],[3,4],[5]]")) == P("2,2,1"));
  }

  TEST_CASE("refines_number examples") {
    CHECK(refines_number(P("2,1,1"), P("3,1")));
    CHECK_FALSE(refines_number(P("3,1"), P("2,2")));
    CHECK(refines_number(P("7,6,4,3,2,1"), P("10,8,5")));
    CHECK(oracle::refines({7, 6, 4, 3, 2, 1}, {10, 8, 5}));
    CHECK_THROWS_AS(refines_number(P("2,1"), P("4")), std::invalid_argument);
  }

  TEST_CASE("refines_number agrees with exhaustive assignment, reflexive and transitive") {
    for (int n = 1; n <= 8; ++n) {
      auto all = all_partitions(n);
      for (const auto& a : all) {
        CHECK(refines_number(a, a));
        for (const auto& b : all) {
          bool ab = refines_number(a, b);
          REQUIRE(ab == oracle::refines(a.parts(), b.parts()));
          if (!ab) continue;
          for (const auto& c : all) {
            if (refines_number(b, c)) CHECK(refines_number(a, c));
          }
        }
      }
    }
  }

  TEST_CASE("refines_set") {
    CHECK(refines_set(S("[[1,3],[2],[4],[5]]"), S("[[1,2,3],[4,5]]")));
    auto pi = S("[[1,2],[3],[4,5]]");
    CHECK(refines_set(pi, pi));
    CHECK_FALSE(refines_set(S("[[1,2],[3,4]]"), S("[[1,3],[2,4]]")));
  }

  TEST_CASE("type_of intertwines refinement") {
    for (int n = 1; n <= 6; ++n) {
      auto all = oracle::set_partitions(n);
      std::vector<SetPartition> lib;
      for (const auto& p : all) {
        std::vector<std::vector<int>> blocks;
        for (const auto& b : p) blocks.emplace_back(b.begin(), b.end());
        lib.push_back(SetPartition::from_blocks(blocks));
      }
      for (std::size_t i = 0; i < lib.size(); ++i) {
        for (std::size_t j = 0; j < lib.size(); ++j) {
          bool r = refines_set(lib[i], lib[j]);
          REQUIRE(r == oracle::finer(all[i], all[j]));
          if (r) CHECK(refines_number(type_of(lib[i]), type_of(lib[j])));
        }
      }
    }
  }

  TEST_CASE("coarsenings") {
    CHECK(coarsenings(P("2,1")) == std::vector<NumberPartition>{P("2,1"), P("3")});
    CHECK(coarsenings(P("1,1,1")) == std::vector<NumberPartition>{P("1,1,1"), P("2,1"), P("3")});
    CHECK(coarsenings(P("2,2")) == std::vector<NumberPartition>{P("2,2"), P("4")});
    for (int n = 1; n <= 8; ++n) {
      for (const auto& l : all_partitions(n)) {
        std::vector<std::vector<int>> got;
        for (const auto& m : coarsenings(l)) got.push_back(m.parts());
        auto want = oracle::coarsenings(l.parts());
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
    }
  }

  TEST_CASE("join examples and lattice laws") {
    CHECK(join(S("[[1,2],[3,4]]"), S("[[1,3],[2,4]]")) == SetPartition::single_block(4));
    auto pi = S("[[1,4],[2],[3,5]]");
    CHECK(join(pi, pi) == pi);
    CHECK(join(S("[[1,2],[3],[4]]"), S("[[1],[2],[3,4]]")) == S("[[1,2],[3,4]]"));

    for (int n = 1; n <= 5; ++n) {
      auto all = oracle::set_partitions(n);
      std::vector<SetPartition> lib;
      for (const auto& p : all) {
        std::vector<std::vector<int>> blocks;
        for (const auto& b : p) blocks.emplace_back(b.begin(), b.end());
        lib.push_back(SetPartition::from_blocks(blocks));
      }
      for (std::size_t i = 0; i < lib.size(); ++i) {
        for (std::size_t j = 0; j < lib.size(); ++j) {
          auto ij = join(lib[i], lib[j]);
          CHECK(ij == join(lib[j], lib[i]));
          CHECK(refines_set(lib[i], ij));
          CHECK(refines_set(lib[j], ij));
          CHECK(ij.block_count() == static_cast<int>(oracle::join(all[i], all[j]).size()));
        }
      }
    }
    // associativity on a sample at n = 6
    auto all6 = oracle::set_partitions(6);
    std::vector<SetPartition> lib6;
    for (std::size_t i = 0; i < all6.size(); i += 7) {
      std::vector<std::vector<int>> blocks;
      for (const auto& b : all6[i]) blocks.emplace_back(b.begin(), b.end());
      lib6.push_back(SetPartition::from_blocks(blocks));
    }
    for (const auto& a : lib6) {
      for (const auto& b : lib6) {
        for (const auto& c : lib6) CHECK(join(join(a, b), c) == join(a, join(b, c)));
      }
    }
  }

  TEST_CASE("is_generic") {
    CHECK(is_generic(P("3,3")));
    CHECK(is_generic(P("4,2,1")));
    CHECK_FALSE(is_generic(P("7,6,4,3,2,1")));
    CHECK_FALSE(is_generic(P("2,1,1")));
    for (int n = 1; n <= 12; ++n) {
      for (const auto& l : all_partitions(n)) REQUIRE(is_generic(l) == oracle::generic(l.parts()));
    }
  }

  TEST_CASE("gamma_k") {
    CHECK(gamma_k(P("5,3"), 2) == P("2,2,2,1,1"));
    CHECK(gamma_k(P("10,8,5"), 2) == NumberPartition(oracle::gamma({10, 8, 5}, 2)));
    CHECK(gamma_k(P("10,8,5"), 2).parts() == std::vector<int>{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1});
    CHECK_THROWS(gamma_k(P("3"), 1));
    for (int k = 2; k <= 4; ++k) {
      for (int m = 1; k * m <= 10; ++m) {
        auto s = NumberPartition::special(k, m, 10);
        CHECK(gamma_k(s, k) == s);
        CHECK(is_special(s, k));
      }
    }
    for (int n = 1; n <= 10; ++n) {
      for (const auto& mu : all_partitions(n)) {
        for (int k : {2, 3, 4}) {
          auto g = gamma_k(mu, k);
          CHECK(g.parts() == oracle::gamma(mu.parts(), k));
          CHECK(gamma_k(g, k) == g);
        }
      }
    }
  }

  TEST_CASE("join types against the brute-force join closure") {
    for (int n = 2; n <= 6; ++n) {
      for (const auto& l : all_partitions(n)) {
        auto closed = oracle::join_closure(l.parts());
        std::set<std::vector<int>> types;
        for (const auto& x : closed) {
          if (static_cast<int>(x.size()) < n) types.insert(oracle::type_of(x));
        }
        for (const auto& tau : all_partitions(n)) {
          INFO(l.to_string(), " ", tau.to_string());
          CHECK(is_join_type(l, tau) == (types.count(tau.parts()) > 0));
        }
      }
    }
  }
}
