#include <doctest.h>

#include "oracles.hpp"
#include "strata/errors.hpp"
#include "strata/morse.hpp"

using namespace strata;

namespace {

NumberPartition P(const char* s) { return NumberPartition::parse(s); }

Cell vertex(int id) { return Cell{{id}, {}}; }

// Two vertices joined by two distinct edges.
TriangulatedSpace double_edge() {
  TriangulatedSpace s;
  s.add_dimension({vertex(0), vertex(1)});
  s.add_dimension({Cell{{0, 1}, {1, 0}}, Cell{{0, 1}, {1, 0}}});
  s.finalize();
  return s;
}

// The full simplex on three vertices.
TriangulatedSpace triangle() {
  TriangulatedSpace s;
  s.add_dimension({vertex(0), vertex(1), vertex(2)});
  // edges 01, 02, 12
  s.add_dimension({Cell{{0, 1}, {1, 0}}, Cell{{0, 2}, {2, 0}}, Cell{{1, 2}, {2, 1}}});
  s.add_dimension({Cell{{0, 1, 2}, {2, 1, 0}}});
  s.finalize();
  return s;
}

std::vector<std::vector<char>> everything(const TriangulatedSpace& s) {
  std::vector<std::vector<char>> d;
  for (int i = 0; i <= s.dimension(); ++i) d.emplace_back(s.cells(i).size(), 1);
  return d;
}

// Acyclicity and perfection checked from scratch on the Hasse diagram.
bool independently_valid(const TriangulatedSpace& s, const std::vector<std::pair<CellRef, CellRef>>& pairs,
                         int expected_critical) {
  std::vector<std::vector<std::vector<int>>> down;
  for (int d = 0; d <= s.dimension(); ++d) {
    std::vector<std::vector<int>> cells;
    for (const auto& c : s.cells(d)) cells.push_back(c.faces);
    down.push_back(std::move(cells));
  }
  std::map<std::pair<int, int>, int> up;
  std::set<std::pair<int, int>> used;
  for (const auto& [lo, hi] : pairs) {
    if (hi.dim != lo.dim + 1) return false;
    const auto& f = down[hi.dim][hi.id];
    if (std::count(f.begin(), f.end(), lo.id) != 1) return false;
    if (!used.insert({lo.dim, lo.id}).second || !used.insert({hi.dim, hi.id}).second) return false;
    up[{lo.dim, lo.id}] = hi.id;
  }
  if (static_cast<long>(s.cell_count()) - static_cast<long>(used.size()) != expected_critical) return false;
  return oracle::morse_acyclic(down, up);
}

}  // namespace

TEST_SUITE("morse") {
  TEST_CASE("verify_acyclic basics") {
    auto s = triangle();
    MorseMatching none{{}, std::vector<std::vector<char>>{{0, 0, 0}, {0, 0, 0}, {0}}};
    CHECK(verify_acyclic(s, none));

    TriangulatedSpace edge;
    edge.add_dimension({vertex(0), vertex(1)});
    edge.add_dimension({Cell{{0, 1}, {1, 0}}});
    edge.finalize();
    MorseMatching one{{{CellRef{0, 0}, CellRef{1, 0}}}, {{1, 0}, {1}}};
    CHECK(verify_acyclic(edge, one));

    auto d = double_edge();
    MorseMatching loop{{{CellRef{0, 0}, CellRef{1, 0}}, {CellRef{0, 1}, CellRef{1, 1}}}, everything(d)};
    auto check = check_matching(d, loop);
    CHECK_FALSE(check.acyclic);
    CHECK_FALSE(verify_acyclic(d, loop));
    CHECK_FALSE(independently_valid(d, loop.pairs, 0));

    MorseMatching not_cover{{{CellRef{0, 0}, CellRef{2, 0}}}, everything(s)};
    CHECK_THROWS_AS(check_matching(s, not_cover), InvalidInput);
  }

  TEST_CASE("cone matching") {
    auto s = triangle();
    auto m = cone_matching(s, 0);
    CHECK(m.pairs.size() == 3);
    auto dom = everything(s);
    dom[0][0] = 0;
    m.domain = dom;
    auto check = check_matching(s, m);
    CHECK(check.ok());
    CHECK(check.critical == 1);
    CHECK(independently_valid(s, m.pairs, 1));
    CHECK(check.collapse_order.size() == 3);
  }

  TEST_CASE("aleph matching with everything in the subcomplex is empty") {
    auto s = triangle();
    VertexScheme scheme{{1, 1, 1}, {0, 1, 2}};
    auto r = build_aleph_matching(s, scheme);
    CHECK(r.matching.pairs.empty());
    CHECK(r.check.ok());
  }

  TEST_CASE("condition C_k") {
    for (int n = 3; n <= 8; ++n) {
      auto fam = refinement_closure(NumberPartition::special(2, 1, n));
      CHECK(fam.size() == oracle::partitions(n).size() - 2);
      CHECK(check_condition_ck(fam, 2));
    }
    CHECK_FALSE(check_condition_ck({P("3,1")}, 2));
    CHECK(check_condition_ck(length_family(6, 2), 2));
    CHECK(check_condition_ck(length_family(6, 3), 2));
    CHECK_THROWS_AS(check_condition_ck({P("1,1,1,1")}, 2), InvalidInput);
    CHECK_THROWS_AS(check_condition_ck({P("4")}, 2), InvalidInput);
  }

  TEST_CASE("aleph matching on the (2,1,1,1) closure under (5) is independently valid") {
    const int k = 2;
    auto fam = refinement_closure(P("2,1,1,1"));
    auto x = build_family_space(family_admissible(fam), P("5"));
    const auto& s = x.space;
    std::map<std::string, int> id;
    for (int v = 0; v < static_cast<int>(s.cells(0).size()); ++v) id[s.label(CellRef{0, v})] = v;
    VertexScheme scheme;
    for (int v = 0; v < static_cast<int>(s.cells(0).size()); ++v) {
      const auto& f = *std::find_if(x.cells.by_rank[0].begin(), x.cells.by_rank[0].end(),
                                    [&](const MarkedForest& g) { return g.key() == s.label(CellRef{0, v}); });
      scheme.in_sub.push_back(is_special(f.level_partition(0), k) ? 1 : 0);
      scheme.anchor.push_back(id.at(gamma_vertex(f, k).key()));
    }
    auto r = build_aleph_matching(s, scheme);
    CHECK(r.check.ok());
    CHECK(r.xi_monotone);
    auto k_space = s.induced_subcomplex(scheme.in_sub);
    CHECK(static_cast<long>(s.cell_count()) - 2 * static_cast<long>(r.matching.pairs.size()) ==
          static_cast<long>(k_space.cell_count()));
    CHECK(independently_valid(s, r.matching.pairs, static_cast<int>(k_space.cell_count())));

    auto cert = collapse_pipeline(fam, P("5"), k);
    CHECK(cert.ok());
    CHECK(cert.k_shape == "simplex");
    CHECK(cert.critical == 1);
  }

  TEST_CASE("collapse pipeline over special closures, n <= 6") {
    for (int n = 3; n <= 6; ++n) {
      for (int k = 2; k < n; ++k) {
        for (int m = 1; k * m <= n; ++m) {
          auto lambda = NumberPartition::special(k, m, n);
          for (const auto& fam : {arnold_family(lambda), refinement_closure(lambda)}) {
            for (const auto& mu : coarsenings(lambda)) {
              if (mu != NumberPartition({n}) && std::find(fam.begin(), fam.end(), mu) == fam.end()) continue;
              auto x = build_family_space(family_admissible(fam), mu);
              if (x.space.dimension() < 0) {
                CHECK_THROWS_AS(collapse_pipeline(fam, mu, k), InvalidInput);
                continue;
              }
              INFO(lambda.to_string(), " | ", mu.to_string(), " k=", k);
              auto cert = collapse_pipeline(fam, mu, k);
              CHECK(cert.ok());
              CHECK(cert.betti_zero);
              if (mu == NumberPartition({n})) CHECK(cert.k_shape == "simplex");
            }
          }
        }
      }
    }
  }

  TEST_CASE("length families r = 2, 3 at n = 6") {
    for (int r : {2, 3}) {
      auto fam = length_family(6, r);
      REQUIRE(check_condition_ck(fam, 2));
      auto cert = collapse_pipeline(fam, P("6"), 2);
      CHECK(cert.ok());
      CHECK(cert.k_shape == "simplex");
      CHECK(cert.betti.is_zero());
    }
  }

  TEST_CASE("pipeline preconditions") {
    auto fam = refinement_closure(P("2,1,1,1"));
    CHECK_THROWS_AS(collapse_pipeline(fam, P("5"), 1), InvalidInput);
    CHECK_THROWS_AS(collapse_pipeline(fam, P("5"), 5), InvalidInput);
    CHECK_THROWS_AS(collapse_pipeline({P("3,1")}, P("4"), 2), InvalidInput);
  }

  TEST_CASE("generic cones") {
    auto c = generic_cone_matching(P("4,2,1"), P("7"));
    CHECK(c.ok());
    CHECK(c.betti.is_zero());
    for (const auto& mu : coarsenings(P("3,3"))) {
      if (mu == P("3,3")) continue;
      CHECK(generic_cone_matching(P("3,3"), mu).ok());
    }
    CHECK_THROWS_AS(generic_cone_matching(P("2,1,1"), P("4")), InvalidInput);
    for (int n = 2; n <= 7; ++n) {
      for (const auto& l : all_partitions(n)) {
        if (!is_generic(l)) continue;
        for (const auto& mu : coarsenings(l)) {
          if (mu == l) continue;
          auto cert = generic_cone_matching(l, mu);
          CHECK(cert.ok());
          CHECK(build_x_space(l, mu).betti.is_zero());
        }
      }
    }
  }
}
