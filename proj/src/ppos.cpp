#include "strata/ppos.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "strata/errors.hpp"
#include "strata/xspace.hpp"

namespace strata {

namespace {

int sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool group_order(const std::vector<int>& a, const std::vector<int>& b) {
  int sa = sum_of(a), sb = sum_of(b);
  if (sa != sb) return sa > sb;
  return a > b;
}

// Kuhn's augmenting paths on the bipartite graph of compatible groups.
bool perfect_matching(const std::vector<std::vector<int>>& adj, int right_size) {
  std::vector<int> owner(static_cast<std::size_t>(right_size), -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int u, std::vector<char>& seen) {
    for (int v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (owner[v] < 0 || augment(owner[v], seen)) {
        owner[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(static_cast<std::size_t>(right_size), 0);
    if (!augment(static_cast<int>(u), seen)) return false;
  }
  return true;
}

}  // namespace

BracketedPartition::BracketedPartition(std::vector<std::vector<int>> groups) : groups_(std::move(groups)) {
  for (auto& g : groups_) {
    if (g.empty()) throw InvalidInput("empty bracket");
    for (int x : g) {
      if (x < 1) throw InvalidInput("bracket entries must be positive");
    }
    std::sort(g.begin(), g.end(), std::greater<>());
  }
  std::sort(groups_.begin(), groups_.end(), group_order);
}

BracketedPartition BracketedPartition::parse(std::string_view text) {
  std::vector<std::vector<int>> groups;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidInput("expected '(' in bracketed partition");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw InvalidInput("unbalanced bracket");
    groups.push_back(NumberPartition::parse(text.substr(i + 1, close - i - 1)).parts());
    i = close + 1;
    skip();
  }
  if (groups.empty()) throw InvalidInput("no brackets");
  return BracketedPartition(std::move(groups));
}

BracketedPartition BracketedPartition::from_vertex(const MarkedForest& vertex) {
  if (vertex.rank() != 0) throw InvalidInput("expected a rank-0 forest");
  const auto& l = vertex.layout();
  std::vector<std::vector<int>> groups(l.labels[1].size());
  for (std::size_t j = 0; j < l.labels[0].size(); ++j) groups[l.parents[0][j]].push_back(l.labels[0][j]);
  return BracketedPartition(std::move(groups));
}

NumberPartition BracketedPartition::underlying() const {
  std::vector<int> all;
  for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
  return NumberPartition(std::move(all));
}

NumberPartition BracketedPartition::brackets() const {
  std::vector<int> sums;
  for (const auto& g : groups_) sums.push_back(sum_of(g));
  return NumberPartition(std::move(sums));
}

std::string BracketedPartition::to_string() const {
  std::string s;
  for (const auto& g : groups_) s += "(" + join_ints(g) + ")";
  return s;
}

bool bracket_refines(const BracketedPartition& a, const BracketedPartition& b) {
  if (a.groups().size() != b.groups().size() || a.brackets() != b.brackets()) return false;
  if (a.underlying().length() <= b.underlying().length()) return false;
  const auto& ga = a.groups();
  const auto& gb = b.groups();
  std::vector<std::vector<int>> adj(ga.size());
  for (std::size_t i = 0; i < ga.size(); ++i) {
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (sum_of(ga[i]) == sum_of(gb[j]) && refines_number(NumberPartition(ga[i]), NumberPartition(gb[j]))) {
        adj[i].push_back(static_cast<int>(j));
      }
    }
  }
  return perfect_matching(adj, static_cast<int>(gb.size()));
}

PPoset build_p_poset(const NumberPartition& lambda, const NumberPartition& mu, ForestModel model) {
  if (lambda.total() != mu.total() || !refines_number(lambda, mu)) {
    throw InvalidInput(lambda.to_string() + " does not refine " + mu.to_string());
  }
  if (lambda == mu) throw InvalidInput("lambda and mu must differ");
  PPoset p{lambda, mu, {}, {}};
  auto admissible = lambda_admissible(lambda, model);

  std::vector<std::vector<std::vector<int>>> options;
  for (int part : mu.parts()) options.push_back(partitions_of(part));
  std::set<BracketedPartition> found;
  std::vector<std::size_t> choice(options.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == options.size()) {
      std::vector<std::vector<int>> groups;
      for (std::size_t i = 0; i < options.size(); ++i) groups.push_back(options[i][choice[i]]);
      BracketedPartition b(std::move(groups));
      auto tau = b.underlying();
      if (tau.length() > mu.length() && admissible(tau)) found.insert(std::move(b));
      return;
    }
    std::size_t first = (j > 0 && mu[j] == mu[j - 1]) ? choice[j - 1] : 0;
    for (std::size_t c = first; c < options[j].size(); ++c) {
      choice[j] = c;
      rec(j + 1);
    }
  };
  rec(0);
  p.elements.assign(found.begin(), found.end());
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    for (std::size_t j = 0; j < p.elements.size(); ++j) {
      if (i != j && bracket_refines(p.elements[i], p.elements[j])) {
        p.relations.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return p;
}

int beta0_of_order_complex(const PPoset& p) {
  std::vector<int> parent(p.elements.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int components = static_cast<int>(p.elements.size());
  for (const auto& [a, b] : p.relations) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

Beta0Report compare_beta0(const NumberPartition& lambda, const NumberPartition& mu, const Guards& guards) {
  auto p = build_p_poset(lambda, mu);
  Beta0Report r;
  r.lambda = lambda;
  r.mu = mu;
  r.elements = static_cast<int>(p.elements.size());
  r.relations = static_cast<int>(p.relations.size());
  r.beta0_poset = beta0_of_order_complex(p);

  auto x = build_family_space(lambda_admissible(lambda), mu, guards);
  r.beta0_forest = x.cells.by_rank.empty() ? 0 : static_cast<int>(x.betti[0]) + 1;

  std::vector<BracketedPartition> vertices;
  if (!x.cells.by_rank.empty()) {
    for (const auto& v : x.cells.by_rank[0]) vertices.push_back(BracketedPartition::from_vertex(v));
  }
  std::sort(vertices.begin(), vertices.end());
  r.vertices_match = vertices == p.elements;

  if (r.vertices_match) {
    std::set<std::pair<int, int>> poset_edges(p.relations.begin(), p.relations.end());
    std::set<std::pair<int, int>> forest_edges;
    if (x.cells.by_rank.size() > 1) {
      auto index = [&](const MarkedForest& v) {
        auto b = BracketedPartition::from_vertex(v);
        return static_cast<int>(std::lower_bound(p.elements.begin(), p.elements.end(), b) - p.elements.begin());
      };
      for (const auto& f : x.cells.by_rank[1]) {
        forest_edges.emplace(index(delete_level(f, 1)), index(delete_level(f, 0)));
      }
    }
    r.edges_match = poset_edges == forest_edges;
  } else {
    r.edges_match = false;
  }
  if (r.beta0_poset != r.beta0_forest) {
    throw ConsistencyError("component counts differ for " + lambda.to_string() + " | " + mu.to_string() + ": " +
                           std::to_string(r.beta0_poset) + " vs " + std::to_string(r.beta0_forest));
  }
  return r;
}

}  // namespace strata
