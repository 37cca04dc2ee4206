#include "strata/quotient_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "strata/errors.hpp"
#include "strata/xspace.hpp"

namespace strata {

namespace {

struct ChainHash {
  std::size_t operator()(const std::vector<int>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

using ChainIndex = std::unordered_map<Chain, int, ChainHash>;

void check_bell_guard(int n, const Guards& guards) {
  if (bell_number(n) > guards.max_bell) {
    throw GuardExceeded("Bell(" + std::to_string(n) + ") exceeds the guard of " + std::to_string(guards.max_bell));
  }
}

std::vector<SetPartition> all_set_partitions(int n) {
  std::vector<SetPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto& self, int i, int blocks) -> void {
    if (i == n) {
      out.push_back(SetPartition::from_tags(rgs));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n > 0) rec(rec, 0, 0);
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

boost::multiprecision::cpp_int factorial(int n) {
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

bool PiLambda::contains(const SetPartition& p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

std::vector<SetPartition> set_partitions_of_type(const NumberPartition& type) {
  std::vector<SetPartition> out;
  for (auto& p : all_set_partitions(type.total())) {
    if (type_of(p) == type) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PiLambda build_pi_lambda(const NumberPartition& lambda, const Guards& guards) {
  const int n = lambda.total();
  check_bell_guard(n, guards);
  auto generators = set_partitions_of_type(lambda);
  std::set<SetPartition> seen(generators.begin(), generators.end());
  std::vector<SetPartition> frontier = generators;
  while (!frontier.empty()) {
    std::vector<SetPartition> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        auto j = join(x, g);
        if (seen.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  seen.insert(SetPartition::discrete(n));
  return PiLambda{lambda, std::vector<SetPartition>(seen.begin(), seen.end())};
}

std::vector<SetPartition> pairwise_join_closure(const NumberPartition& lambda, const Guards& guards) {
  const int n = lambda.total();
  check_bell_guard(n, guards);
  std::vector<SetPartition> all = set_partitions_of_type(lambda);
  std::set<SetPartition> known(all.begin(), all.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SetPartition> current(known.begin(), known.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        if (known.insert(join(current[i], current[j])).second) grew = true;
      }
    }
  }
  known.insert(SetPartition::discrete(n));
  return {known.begin(), known.end()};
}

SetPartition permute(const Permutation& g, const SetPartition& p) {
  std::vector<int> tags(static_cast<std::size_t>(p.n()));
  for (int i = 0; i < p.n(); ++i) tags[g[i]] = p.rgs()[i];
  return SetPartition::from_tags(tags);
}

SetPartition consecutive_partition(const NumberPartition& mu) {
  std::vector<int> tags;
  for (int b = 0; b < mu.length(); ++b) tags.insert(tags.end(), static_cast<std::size_t>(mu[b]), b);
  return SetPartition::from_tags(tags);
}

Stabilizer stabilizer(const SetPartition& pi) {
  const int n = pi.n();
  Stabilizer st;
  auto blocks = pi.blocks();
  auto identity = [&] {
    Permutation g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 0);
    return g;
  };
  for (const auto& b : blocks) {
    for (std::size_t j = 1; j < b.size(); ++j) {
      auto g = identity();
      std::swap(g[b[j - 1] - 1], g[b[j] - 1]);
      st.generators.push_back(std::move(g));
    }
  }
  std::map<std::size_t, std::vector<const std::vector<int>*>> by_size;
  for (const auto& b : blocks) by_size[b.size()].push_back(&b);
  st.order = 1;
  for (const auto& [size, group] : by_size) {
    st.order *= factorial(static_cast<int>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) st.order *= factorial(static_cast<int>(size));
    for (std::size_t c = 1; c < group.size(); ++c) {
      auto g = identity();
      const auto& a = *group[c - 1];
      const auto& b = *group[c];
      for (std::size_t j = 0; j < size; ++j) std::swap(g[a[j] - 1], g[b[j] - 1]);
      st.generators.push_back(std::move(g));
    }
  }
  return st;
}

std::vector<Permutation> group_elements(const std::vector<Permutation>& generators, int n, std::size_t limit) {
  Permutation identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  std::set<Permutation> seen{identity};
  std::vector<Permutation> queue{identity};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : generators) {
      Permutation h(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) h[i] = g[queue[head][i]];
      if (seen.insert(h).second) {
        if (seen.size() > limit) throw GuardExceeded("group larger than " + std::to_string(limit));
        queue.push_back(std::move(h));
      }
    }
  }
  return queue;
}

std::vector<int> OrbitComplex::orbit_counts() const {
  std::vector<int> out;
  for (const auto& r : representatives) out.push_back(static_cast<int>(r.size()));
  return out;
}

ChainComplex OrbitComplex::complex() const {
  std::vector<std::vector<CellSpec>> specs(representatives.size());
  for (std::size_t d = 0; d < representatives.size(); ++d) {
    for (std::size_t o = 0; o < representatives[d].size(); ++o) {
      CellSpec cell{std::to_string(d) + ":" + std::to_string(o), {}};
      if (d > 0) {
        for (std::size_t i = 0; i < faces[d][o].size(); ++i) {
          cell.faces.emplace_back(i % 2 == 0 ? 1 : -1, std::to_string(d - 1) + ":" + std::to_string(faces[d][o][i]));
        }
      }
      specs[d].push_back(std::move(cell));
    }
  }
  return ChainComplex::build(specs);
}

OrbitComplex orbit_cells(const PiLambda& pl, const SetPartition& pi) {
  if (!pl.contains(pi)) throw InvalidInput(pi.to_string() + " is not a join of type " + pl.lambda.to_string());
  OrbitComplex oc;
  oc.pi = pi;
  const auto bottom = SetPartition::discrete(pi.n());
  for (const auto& e : pl.elements) {
    if (e != bottom && e != pi && refines_set(e, pi)) oc.elements.push_back(e);
  }
  std::stable_sort(oc.elements.begin(), oc.elements.end(),
                   [](const SetPartition& a, const SetPartition& b) { return a.block_count() > b.block_count(); });
  const int m = static_cast<int>(oc.elements.size());
  std::map<std::vector<std::uint8_t>, int> index;
  for (int e = 0; e < m; ++e) index.emplace(oc.elements[e].rgs(), e);

  std::vector<std::vector<int>> up(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b && oc.elements[a].block_count() > oc.elements[b].block_count() &&
          refines_set(oc.elements[a], oc.elements[b])) {
        up[a].push_back(b);
      }
    }
  }

  Chain current;
  auto dfs = [&](auto& self, int e) -> void {
    current.push_back(e);
    const std::size_t d = current.size() - 1;
    if (oc.chains.size() <= d) oc.chains.resize(d + 1);
    oc.chains[d].push_back(current);
    for (int f : up[e]) self(self, f);
    current.pop_back();
  };
  for (int e = 0; e < m; ++e) dfs(dfs, e);

  auto st = stabilizer(pi);
  std::vector<std::vector<int>> act;
  for (const auto& g : st.generators) {
    std::vector<int> image(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      auto it = index.find(permute(g, oc.elements[e]).rgs());
      if (it == index.end()) throw ConsistencyError("stabilizer moves an element out of the interval");
      image[e] = it->second;
    }
    act.push_back(std::move(image));
  }

  std::vector<ChainIndex> chain_index(oc.chains.size());
  for (std::size_t d = 0; d < oc.chains.size(); ++d) {
    auto& idx = chain_index[d];
    idx.reserve(oc.chains[d].size());
    for (std::size_t c = 0; c < oc.chains[d].size(); ++c) idx.emplace(oc.chains[d][c], static_cast<int>(c));

    UnionFind uf(oc.chains[d].size());
    for (std::size_t c = 0; c < oc.chains[d].size(); ++c) {
      for (const auto& image : act) {
        Chain moved;
        moved.reserve(oc.chains[d][c].size());
        for (int e : oc.chains[d][c]) moved.push_back(image[e]);
        auto it = idx.find(moved);
        if (it == idx.end()) throw ConsistencyError("stabilizer image of a chain is not a chain");
        uf.unite(static_cast<int>(c), it->second);
      }
    }
    std::vector<int> orbit_of(oc.chains[d].size());
    std::vector<int> reps;
    std::unordered_map<int, int> root_to_orbit;
    for (std::size_t c = 0; c < oc.chains[d].size(); ++c) {
      int root = uf.find(static_cast<int>(c));
      auto [it, fresh] = root_to_orbit.emplace(root, static_cast<int>(reps.size()));
      if (fresh) reps.push_back(static_cast<int>(c));
      orbit_of[c] = it->second;
    }
    oc.orbit_of.push_back(std::move(orbit_of));
    oc.representatives.push_back(std::move(reps));
  }

  oc.faces.resize(oc.chains.size());
  for (std::size_t d = 0; d < oc.chains.size(); ++d) {
    oc.faces[d].resize(oc.representatives[d].size());
    if (d == 0) continue;
    for (std::size_t o = 0; o < oc.representatives[d].size(); ++o) {
      const auto& chain = oc.chains[d][oc.representatives[d][o]];
      for (std::size_t i = 0; i < chain.size(); ++i) {
        Chain face = chain;
        face.erase(face.begin() + static_cast<long>(i));
        oc.faces[d][o].push_back(oc.orbit_of[d - 1][chain_index[d - 1].at(face)]);
      }
    }
  }
  return oc;
}

std::vector<int> orbit_counts_by_group_sweep(const OrbitComplex& oc, std::size_t group_limit) {
  auto group = group_elements(stabilizer(oc.pi).generators, oc.pi.n(), group_limit);
  const int m = static_cast<int>(oc.elements.size());
  std::map<std::vector<std::uint8_t>, int> index;
  for (int e = 0; e < m; ++e) index.emplace(oc.elements[e].rgs(), e);
  std::vector<std::vector<int>> act;
  act.reserve(group.size());
  for (const auto& g : group) {
    std::vector<int> image(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) image[e] = index.at(permute(g, oc.elements[e]).rgs());
    act.push_back(std::move(image));
  }
  std::vector<int> counts;
  for (const auto& chains : oc.chains) {
    std::unordered_set<Chain, ChainHash> done;
    int orbits = 0;
    for (const auto& c : chains) {
      if (done.count(c)) continue;
      ++orbits;
      for (const auto& image : act) {
        Chain moved;
        for (int e : c) moved.push_back(image[e]);
        done.insert(std::move(moved));
      }
    }
    counts.push_back(orbits);
  }
  return counts;
}

MarkedForest psi_forest_of_chain(const std::vector<SetPartition>& chain, const SetPartition& pi) {
  std::vector<const SetPartition*> levels;
  for (const auto& x : chain) levels.push_back(&x);
  levels.push_back(&pi);
  ForestLayout l;
  for (std::size_t h = 0; h < levels.size(); ++h) {
    const auto& x = *levels[h];
    std::vector<int> sizes(static_cast<std::size_t>(x.block_count()), 0);
    std::vector<int> parents(static_cast<std::size_t>(x.block_count()), -1);
    for (int i = 0; i < x.n(); ++i) {
      int b = x.rgs()[i];
      ++sizes[b];
      if (h + 1 < levels.size()) {
        int p = levels[h + 1]->rgs()[i];
        if (parents[b] >= 0 && parents[b] != p) throw InvalidInput("chain is not increasing under refinement");
        parents[b] = p;
      }
    }
    l.labels.push_back(std::move(sizes));
    l.parents.push_back(h + 1 < levels.size() ? std::move(parents) : std::vector<int>{});
  }
  return MarkedForest(l);
}

bool OracleReport::ok() const {
  if (oracle_reachable != forest_reachable) return false;
  for (const auto& d : dims) {
    if (d.oracle_cells != d.forest_cells) return false;
  }
  return psi_bijective && psi_constant_on_orbits && faces_match && collisions == 0 && betti_equal &&
         (!swept || sweep_matches);
}

namespace {

OracleReport compare_impl(const PiLambda& pl, const NumberPartition& mu, const Guards& guards, int sweep_up_to) {
  const auto& lambda = pl.lambda;
  OracleReport rep;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.pi = consecutive_partition(mu);
  rep.oracle_reachable = pl.contains(rep.pi);
  rep.forest_reachable = is_join_type(lambda, mu);

  auto literal = build_family_space(lambda_admissible(lambda, ForestModel::literal), mu, guards, true);
  rep.literal_betti = literal.betti;
  auto x = build_x_space(lambda, mu, ForestModel::join_closed, guards, true);
  rep.forest_betti = x.betti;

  if (!rep.oracle_reachable) {
    rep.oracle_betti = BettiVector::point();
    rep.betti_equal = rep.oracle_betti == rep.forest_betti;
    for (std::size_t d = 0; d < literal.cells.by_rank.size(); ++d) {
      rep.dims.push_back({static_cast<int>(d), 0, 0, static_cast<int>(literal.cells.by_rank[d].size())});
    }
    rep.literal_matches = literal.cells.size() == 0;
    return rep;
  }

  auto oc = orbit_cells(pl, rep.pi);
  auto oracle_counts = oc.orbit_counts();
  const std::size_t dims = std::max({oracle_counts.size(), x.cells.by_rank.size(), literal.cells.by_rank.size()});
  for (std::size_t d = 0; d < dims; ++d) {
    auto at = [d](const auto& v) { return d < v.size() ? static_cast<int>(v[d].size()) : 0; };
    rep.dims.push_back({static_cast<int>(d), d < oracle_counts.size() ? oracle_counts[d] : 0, at(x.cells.by_rank),
                        at(literal.cells.by_rank)});
    if (rep.dims.back().literal_cells != rep.dims.back().oracle_cells) rep.literal_matches = false;
  }

  std::vector<std::vector<std::string>> rep_keys(oc.chains.size());
  for (std::size_t d = 0; d < oc.chains.size(); ++d) {
    rep_keys[d].assign(oc.representatives[d].size(), {});
    for (std::size_t c = 0; c < oc.chains[d].size(); ++c) {
      std::vector<SetPartition> chain;
      for (int e : oc.chains[d][c]) chain.push_back(oc.elements[e]);
      auto key = psi_forest_of_chain(chain, rep.pi).key();
      auto& slot = rep_keys[d][oc.orbit_of[d][c]];
      if (slot.empty()) {
        slot = std::move(key);
      } else if (slot != key) {
        rep.psi_constant_on_orbits = false;
      }
    }
    std::set<std::string> images(rep_keys[d].begin(), rep_keys[d].end());
    rep.collisions += static_cast<int>(rep_keys[d].size() - images.size());
    std::set<std::string> forests;
    if (d < x.cells.by_rank.size()) {
      for (const auto& f : x.cells.by_rank[d]) forests.insert(f.key());
    }
    if (images != forests) rep.psi_bijective = false;
  }
  if (oc.chains.size() < x.cells.by_rank.size()) rep.psi_bijective = false;

  for (std::size_t d = 1; d < oc.chains.size(); ++d) {
    for (std::size_t o = 0; o < oc.representatives[d].size(); ++o) {
      std::vector<SetPartition> chain;
      for (int e : oc.chains[d][oc.representatives[d][o]]) chain.push_back(oc.elements[e]);
      auto forest = psi_forest_of_chain(chain, rep.pi);
      for (std::size_t i = 0; i <= d; ++i) {
        if (delete_level(forest, static_cast<int>(i)).key() != rep_keys[d - 1][oc.faces[d][o][i]]) {
          rep.faces_match = false;
        }
      }
    }
  }

  rep.oracle_betti = reduced_betti(oc.complex(), true);
  rep.betti_equal = rep.oracle_betti == rep.forest_betti;

  if (lambda.total() <= sweep_up_to) {
    rep.swept = true;
    rep.sweep_matches = orbit_counts_by_group_sweep(oc) == oracle_counts;
  }
  return rep;
}

}  // namespace

OracleReport compare_with_forest_model(const NumberPartition& lambda, const NumberPartition& mu, const Guards& guards,
                                       int sweep_up_to) {
  if (lambda.total() != mu.total() || !refines_number(lambda, mu)) {
    throw InvalidInput(lambda.to_string() + " does not refine " + mu.to_string());
  }
  if (lambda == mu) {
    OracleReport rep;
    rep.lambda = lambda;
    rep.mu = mu;
    rep.pi = consecutive_partition(mu);
    rep.oracle_betti = rep.forest_betti = rep.literal_betti = BettiVector::empty_space();
    return rep;
  }
  return compare_impl(build_pi_lambda(lambda, guards), mu, guards, sweep_up_to);
}

std::vector<OracleReport> oracle_sweep(int n, const Guards& guards, int sweep_up_to) {
  if (n < 1) throw InvalidInput("n must be positive");
  check_bell_guard(n, guards);
  std::vector<OracleReport> out;
  for (const auto& lambda : all_partitions(n)) {
    auto pl = build_pi_lambda(lambda, guards);
    for (const auto& mu : coarsenings(lambda)) {
      if (mu == lambda) continue;
      out.push_back(compare_impl(pl, mu, guards, sweep_up_to));
    }
  }
  return out;
}

}  // namespace strata
