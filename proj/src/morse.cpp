#include "strata/morse.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "strata/errors.hpp"

namespace strata {

namespace {

bool cell_inside(const Cell& c, const std::vector<char>& in_sub) {
  return std::all_of(c.vertices.begin(), c.vertices.end(), [&](int v) { return in_sub[v] != 0; });
}

std::vector<std::vector<char>> all_cells(const TriangulatedSpace& space) {
  std::vector<std::vector<char>> out;
  for (int d = 0; d <= space.dimension(); ++d) out.emplace_back(space.cells(d).size(), 1);
  return out;
}

// 1-based position of the first vertex outside the subcomplex, 0 if none.
int xi_of(const Cell& c, const std::vector<char>& in_sub) {
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (!in_sub[c.vertices[i]]) return static_cast<int>(i) + 1;
  }
  return 0;
}

std::string describe(const TriangulatedSpace& space, CellRef c) {
  return "cell " + space.label(c) + " (dim " + std::to_string(c.dim) + ")";
}

bool is_simplex(const TriangulatedSpace& k) {
  const int d = k.dimension();
  if (d < 0 || k.cells(d).size() != 1) return false;
  auto f = k.f_vector();
  long binom = 1;  // C(d+1, j+1), built incrementally
  for (int j = 0; j <= d; ++j) {
    binom = binom * (d + 1 - j) / (j + 1);
    if (f[j] != binom) return false;
  }
  return true;
}

std::unordered_map<std::string, int> vertex_ids(const TriangulatedSpace& space) {
  std::unordered_map<std::string, int> ids;
  if (space.dimension() < 0) return ids;
  for (std::size_t v = 0; v < space.cells(0).size(); ++v) {
    ids.emplace(space.label({0, static_cast<int>(v)}), static_cast<int>(v));
  }
  return ids;
}

}  // namespace

std::vector<std::vector<char>> complement_domain(const TriangulatedSpace& space, const std::vector<char>& in_sub) {
  std::vector<std::vector<char>> out;
  for (int d = 0; d <= space.dimension(); ++d) {
    std::vector<char> dim;
    for (const auto& c : space.cells(d)) dim.push_back(cell_inside(c, in_sub) ? 0 : 1);
    out.push_back(std::move(dim));
  }
  return out;
}

MatchingCheck check_matching(const TriangulatedSpace& space, const MorseMatching& m) {
  MatchingCheck out;
  const int top = space.dimension();
  std::vector<std::vector<int>> times_matched;
  std::vector<std::vector<int>> pair_of_lower;
  for (int d = 0; d <= top; ++d) {
    times_matched.emplace_back(space.cells(d).size(), 0);
    pair_of_lower.emplace_back(space.cells(d).size(), -1);
  }

  for (std::size_t p = 0; p < m.pairs.size(); ++p) {
    const auto& [lo, hi] = m.pairs[p];
    if (lo.dim < 0 || hi.dim != lo.dim + 1 || hi.dim > top || lo.id < 0 ||
        lo.id >= static_cast<int>(space.cells(lo.dim).size()) || hi.id < 0 ||
        hi.id >= static_cast<int>(space.cells(hi.dim).size())) {
      throw InvalidInput("matched pair refers to missing cells");
    }
    const auto& faces = space.cell(hi).faces;
    if (std::find(faces.begin(), faces.end(), lo.id) == faces.end()) {
      throw InvalidInput("matched pair is not a cover: " + describe(space, lo) + " under " + describe(space, hi));
    }
    ++times_matched[lo.dim][lo.id];
    ++times_matched[hi.dim][hi.id];
    pair_of_lower[lo.dim][lo.id] = static_cast<int>(p);
  }
  out.matched_pairs = static_cast<int>(m.pairs.size());

  for (int d = 0; d <= top; ++d) {
    for (std::size_t id = 0; id < space.cells(d).size(); ++id) {
      int t = times_matched[d][id];
      bool wanted = d < static_cast<int>(m.domain.size()) && m.domain[d][id];
      if (t == 0) ++out.critical;
      if ((wanted && t != 1) || (!wanted && t != 0)) {
        if (out.perfect) out.witness = describe(space, {d, static_cast<int>(id)}) + " matched " + std::to_string(t) + " times";
        out.perfect = false;
      }
    }
  }

  // Arc p -> q when the lower cell of q is a face of the upper cell of p.
  std::vector<std::vector<int>> arcs(m.pairs.size());
  std::vector<int> indegree(m.pairs.size(), 0);
  for (std::size_t p = 0; p < m.pairs.size(); ++p) {
    const auto& [lo, hi] = m.pairs[p];
    for (int f : space.cell(hi).faces) {
      int q = pair_of_lower[lo.dim][f];
      if (q < 0 || q == static_cast<int>(p)) continue;
      arcs[p].push_back(q);
      ++indegree[q];
    }
  }
  std::deque<int> ready;
  for (std::size_t p = 0; p < m.pairs.size(); ++p) {
    if (indegree[p] == 0) ready.push_back(static_cast<int>(p));
  }
  while (!ready.empty()) {
    int p = ready.front();
    ready.pop_front();
    out.collapse_order.push_back(m.pairs[p]);
    for (int q : arcs[p]) {
      if (--indegree[q] == 0) ready.push_back(q);
    }
  }
  if (out.collapse_order.size() != m.pairs.size()) {
    out.acyclic = false;
    for (std::size_t p = 0; p < m.pairs.size(); ++p) {
      if (indegree[p] > 0) {
        out.witness = "cycle through " + describe(space, m.pairs[p].first);
        break;
      }
    }
  }
  return out;
}

bool verify_acyclic(const TriangulatedSpace& space, const MorseMatching& m) { return check_matching(space, m).ok(); }

AlephResult build_aleph_matching(const TriangulatedSpace& space, const VertexScheme& scheme) {
  const std::size_t nv = space.dimension() < 0 ? 0 : space.cells(0).size();
  if (scheme.in_sub.size() != nv || scheme.anchor.size() != nv) throw ConsistencyError("vertex scheme has the wrong size");
  for (std::size_t v = 0; v < nv; ++v) {
    int z = scheme.anchor[v];
    if (z < 0 || static_cast<std::size_t>(z) >= nv || !scheme.in_sub[z] || z > static_cast<int>(v) ||
        (scheme.in_sub[v] && z != static_cast<int>(v))) {
      throw ConsistencyError("malformed vertex scheme at " + describe(space, {0, static_cast<int>(v)}));
    }
  }

  AlephResult out;
  out.matching.domain = complement_domain(space, scheme.in_sub);
  std::vector<std::vector<int>> xi(static_cast<std::size_t>(space.dimension() + 1));
  std::vector<std::vector<char>> in_u(xi.size());
  for (int d = 0; d <= space.dimension(); ++d) {
    for (const auto& c : space.cells(d)) {
      for (std::size_t i = 1; i < c.vertices.size(); ++i) {
        if (c.vertices[i - 1] >= c.vertices[i]) throw ConsistencyError("cell vertices are not listed in vertex order");
      }
      xi[d].push_back(xi_of(c, scheme.in_sub));
    }
    in_u[d].assign(space.cells(d).size(), 0);
  }

  for (int d = 0; d <= space.dimension(); ++d) {
    for (std::size_t id = 0; id < space.cells(d).size(); ++id) {
      const CellRef sigma{d, static_cast<int>(id)};
      const auto& c = space.cell(sigma);
      const int x = xi[d][id];
      if (x == 0) continue;
      const int chi = scheme.anchor[c.vertices[x - 1]];
      if (x > 1 && c.vertices[x - 2] == chi) continue;
      in_u[d][id] = 1;
      std::vector<int> found;
      for (const auto& [tau, i] : space.cofaces(sigma)) {
        if (i == x - 1 && space.cell({d + 1, tau}).vertices[i] == chi) found.push_back(tau);
      }
      if (found.size() != 1) {
        throw ConsistencyError("unique insertion fails at " + describe(space, sigma) + ": " +
                               std::to_string(found.size()) + " candidates");
      }
      out.matching.pairs.emplace_back(sigma, CellRef{d + 1, found.front()});
    }
  }

  for (const auto& [lo, hi] : out.matching.pairs) {
    const int x_hi = xi[hi.dim][hi.id];
    if (x_hi != xi[lo.dim][lo.id] + 1) out.xi_monotone = false;
    for (int f : space.cell(hi).faces) {
      if (f != lo.id && in_u[lo.dim][f] && xi[lo.dim][f] < x_hi) out.xi_monotone = false;
    }
  }
  out.check = check_matching(space, out.matching);
  return out;
}

MorseMatching cone_matching(const TriangulatedSpace& space, int apex, const std::vector<char>& restrict_to_vertices) {
  MorseMatching m;
  const bool restricted = !restrict_to_vertices.empty();
  for (int d = 0; d <= space.dimension(); ++d) {
    std::vector<char> dom;
    for (std::size_t id = 0; id < space.cells(d).size(); ++id) {
      const CellRef sigma{d, static_cast<int>(id)};
      const auto& c = space.cell(sigma);
      bool inside = !restricted || cell_inside(c, restrict_to_vertices);
      bool is_apex = d == 0 && c.vertices.front() == apex;
      dom.push_back(inside && !is_apex ? 1 : 0);
      if (!inside || std::find(c.vertices.begin(), c.vertices.end(), apex) != c.vertices.end()) continue;
      std::vector<int> found;
      for (const auto& [tau, i] : space.cofaces(sigma)) {
        if (space.cell({d + 1, tau}).vertices[i] == apex) found.push_back(tau);
      }
      if (found.size() != 1) {
        throw ConsistencyError("not a cone: " + describe(space, sigma) + " has " + std::to_string(found.size()) +
                               " cofaces through the apex");
      }
      m.pairs.emplace_back(sigma, CellRef{d + 1, found.front()});
    }
    m.domain.push_back(std::move(dom));
  }
  return m;
}

bool check_condition_ck(const std::vector<NumberPartition>& family, int k) {
  if (family.empty()) return true;
  const int n = family.front().total();
  const auto ones = NumberPartition::repeated(1, n);
  const auto whole = NumberPartition({n});
  std::vector<NumberPartition> sorted = family;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& mu : sorted) {
    if (mu.total() != n) throw InvalidInput("family mixes different totals");
    if (mu == ones || mu == whole) throw InvalidInput("family must exclude " + mu.to_string());
  }
  return std::all_of(sorted.begin(), sorted.end(),
                     [&](const NumberPartition& mu) { return std::binary_search(sorted.begin(), sorted.end(), gamma_k(mu, k)); });
}

std::vector<NumberPartition> arnold_family(const NumberPartition& lambda) {
  std::vector<NumberPartition> out;
  const NumberPartition whole({lambda.total()});
  for (const auto& tau : coarsenings(lambda)) {
    if (tau != whole && is_join_type(lambda, tau)) out.push_back(tau);
  }
  return out;
}

std::vector<NumberPartition> refinement_closure(const NumberPartition& lambda) {
  std::vector<NumberPartition> out;
  const NumberPartition whole({lambda.total()});
  for (const auto& tau : coarsenings(lambda)) {
    if (tau != whole) out.push_back(tau);
  }
  return out;
}

std::vector<NumberPartition> length_family(int n, int r) {
  std::vector<NumberPartition> out;
  for (const auto& tau : all_partitions(n)) {
    if (tau.length() >= r && tau.length() <= n - 1) out.push_back(tau);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MarkedForest gamma_vertex(const MarkedForest& v, int k) {
  if (v.rank() != 0) throw InvalidInput("gamma_vertex expects a rank-0 forest");
  if (k < 2) throw InvalidInput("k must be at least 2");
  const auto& src = v.layout();
  ForestLayout l;
  l.labels = {{}, src.labels[1]};
  l.parents = {{}, {}};
  for (std::size_t j = 0; j < src.labels[0].size(); ++j) {
    int label = src.labels[0][j];
    for (int q = 0; q < label / k; ++q) {
      l.labels[0].push_back(k);
      l.parents[0].push_back(src.parents[0][j]);
    }
    for (int r = 0; r < label % k; ++r) {
      l.labels[0].push_back(1);
      l.parents[0].push_back(src.parents[0][j]);
    }
  }
  return MarkedForest(l);
}

CollapseCertificate collapse_pipeline(const std::vector<NumberPartition>& family, const NumberPartition& mu, int k,
                                      const Guards& guards) {
  const int n = mu.total();
  if (k < 2 || k >= n) throw InvalidInput("k must satisfy 2 <= k < n");
  if (!check_condition_ck(family, k)) throw InvalidInput("the family is not closed under gamma_" + std::to_string(k));
  if (std::any_of(family.begin(), family.end(), [n](const NumberPartition& t) { return t.total() != n; })) {
    throw InvalidInput("family and mu have different totals");
  }
  const NumberPartition whole({n});
  if (mu != whole && std::find(family.begin(), family.end(), mu) == family.end()) {
    throw InvalidInput("mu must lie in the family or be (n)");
  }

  auto x = build_family_space(family_admissible(family), mu, guards, true);
  const auto& space = x.space;
  if (space.dimension() < 0) throw InvalidInput("the space is empty: mu has no refinement in the family");

  CollapseCertificate cert;
  cert.k = k;
  cert.mu = mu;
  cert.f_vector = space.f_vector();
  cert.betti = x.betti;
  cert.betti_zero = x.betti.is_zero();

  const auto& vertices = x.cells.by_rank[0];
  auto ids = vertex_ids(space);
  VertexScheme scheme;
  scheme.in_sub.resize(vertices.size());
  scheme.anchor.resize(vertices.size());
  std::vector<const MarkedForest*> forest_of_vertex(vertices.size());
  for (const auto& v : vertices) forest_of_vertex[ids.at(v.key())] = &v;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& f = *forest_of_vertex[v];
    scheme.in_sub[v] = is_special(f.level_partition(0), k) ? 1 : 0;
    auto it = ids.find(gamma_vertex(f, k).key());
    if (it == ids.end()) throw ConsistencyError("anchor of vertex " + f.key() + " is not a vertex");
    scheme.anchor[v] = it->second;
  }

  auto aleph = build_aleph_matching(space, scheme);
  cert.xi_monotone = aleph.xi_monotone;
  cert.insertion_agrees = true;
  for (const auto& [lo, hi] : aleph.matching.pairs) {
    const auto& sigma = lo.dim == 0 ? *forest_of_vertex[lo.id] : x.cells.by_rank[lo.dim][lo.id];
    if (sigma.key() != space.label(lo)) throw ConsistencyError("cell numbering differs from the enumeration");
    int h = xi_of(space.cell(lo), scheme.in_sub) - 1;
    if (insert_gamma_level(sigma, h, k).key() != space.label(hi)) cert.insertion_agrees = false;
  }

  auto k_space = space.induced_subcomplex(scheme.in_sub);
  cert.k_f_vector = k_space.f_vector();
  if (mu == whole || gamma_k(mu, k) == mu) {
    if (!is_simplex(k_space)) throw ConsistencyError("the special subcomplex is not a simplex");
    cert.k_shape = "simplex";
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (scheme.in_sub[v]) {
        cert.apex = static_cast<int>(v);
        break;
      }
    }
  } else {
    cert.k_shape = "cone";
    const auto target = gamma_k(mu, k);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (forest_of_vertex[v]->level_partition(0) == target) {
        if (cert.apex >= 0) throw ConsistencyError("several vertices carry " + target.to_string());
        cert.apex = static_cast<int>(v);
      }
    }
    if (cert.apex < 0) throw ConsistencyError("no vertex carries " + target.to_string());
  }

  auto cone = cone_matching(space, cert.apex, scheme.in_sub);
  MorseMatching combined;
  combined.pairs = aleph.matching.pairs;
  combined.pairs.insert(combined.pairs.end(), cone.pairs.begin(), cone.pairs.end());
  combined.domain = all_cells(space);
  combined.domain[0][cert.apex] = 0;
  auto check = check_matching(space, combined);
  cert.matched = check.matched_pairs;
  cert.critical = check.critical;
  cert.acyclic = check.acyclic && aleph.check.acyclic;
  cert.perfect = check.perfect && aleph.check.perfect;
  return cert;
}

ConeCertificate generic_cone_matching(const NumberPartition& lambda, const NumberPartition& mu, const Guards& guards) {
  if (!is_generic(lambda)) throw InvalidInput(lambda.to_string() + " is not generic");
  if (lambda == mu) throw InvalidInput("lambda and mu must differ");
  auto x = build_x_space(lambda, mu, ForestModel::join_closed, guards, true);

  ConeCertificate cert;
  cert.lambda = lambda;
  cert.mu = mu;
  if (!x.reachable) {
    cert.reachable = false;
    cert.f_vector = {1};
    cert.apex = 0;
    cert.critical = 1;
    cert.acyclic = cert.perfect = true;
    cert.betti = x.betti;
    cert.betti_zero = x.betti.is_zero();
    return cert;
  }
  cert.f_vector = x.space.f_vector();
  cert.betti = x.betti;
  cert.betti_zero = x.betti.is_zero();
  auto ids = vertex_ids(x.space);
  for (const auto& v : x.cells.by_rank[0]) {
    if (v.level_partition(0) == lambda) {
      if (cert.apex >= 0) throw ConsistencyError("several vertices have leaf level " + lambda.to_string());
      cert.apex = ids.at(v.key());
    }
  }
  if (cert.apex < 0) throw ConsistencyError("no vertex has leaf level " + lambda.to_string());
  auto m = cone_matching(x.space, cert.apex);
  auto check = check_matching(x.space, m);
  cert.matched = check.matched_pairs;
  cert.critical = check.critical;
  cert.acyclic = check.acyclic;
  cert.perfect = check.perfect;
  return cert;
}

}  // namespace strata
