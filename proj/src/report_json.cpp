#include "strata/report_json.hpp"

#include <functional>

#include "strata/errors.hpp"

namespace strata {

namespace {

Json node_to_json(const ForestLayout& l, int h, int v, const std::vector<std::vector<std::vector<int>>>& kids) {
  Json children = Json::array();
  if (h > 0) {
    for (int c : kids[h][v]) children.push_back(node_to_json(l, h - 1, c, kids));
  }
  return Json{{"label", l.labels[h][v]}, {"children", std::move(children)}};
}

long alternating_sum(const std::vector<int>& f) {
  long e = 0;
  for (std::size_t i = 0; i < f.size(); ++i) e += (i % 2 == 0 ? 1 : -1) * static_cast<long>(f[i]);
  return e;
}

}  // namespace

Json forest_to_json(const MarkedForest& f) {
  const auto& l = f.layout();
  const int top = static_cast<int>(l.labels.size()) - 1;
  std::vector<std::vector<std::vector<int>>> kids(l.labels.size());
  for (int h = 1; h <= top; ++h) {
    kids[h].resize(l.labels[h].size());
    for (std::size_t j = 0; j < l.labels[h - 1].size(); ++j) {
      kids[h][l.parents[h - 1][j]].push_back(static_cast<int>(j));
    }
  }
  Json roots = Json::array();
  for (std::size_t v = 0; v < l.labels[top].size(); ++v) roots.push_back(node_to_json(l, top, static_cast<int>(v), kids));
  return Json{{"rank", f.rank()}, {"roots", std::move(roots)}};
}

MarkedForest forest_from_json(const Json& j) {
  try {
    const int rank = j.at("rank").get<int>();
    if (rank < 0) throw InvalidInput("forest rank must be non-negative");
    const int top = rank + 1;
    ForestLayout l;
    l.labels.resize(top + 1);
    l.parents.resize(top + 1);
    std::function<void(const Json&, int, int)> add = [&](const Json& node, int h, int parent) {
      const auto& children = node.at("children");
      if (!children.is_array()) throw InvalidInput("children must be an array");
      if ((h == 0) != children.empty()) throw InvalidInput("leaves must all sit at height 0");
      const int index = static_cast<int>(l.labels[h].size());
      l.labels[h].push_back(node.at("label").get<int>());
      if (h < top) l.parents[h].push_back(parent);
      for (const auto& c : children) add(c, h - 1, index);
    };
    const auto& roots = j.at("roots");
    if (!roots.is_array() || roots.empty()) throw InvalidInput("roots must be a nonempty array");
    for (const auto& r : roots) add(r, top, -1);
    return MarkedForest(l);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed forest JSON: ") + e.what());
  }
}

Json betti_to_json(const BettiVector& b, int lo, int hi) {
  Json out = Json::object();
  for (int i = lo; i <= hi; ++i) out[std::to_string(i)] = b[i];
  return out;
}

Json complex_to_json(const std::vector<int>& f_vector, const BettiVector& b) {
  int hi = static_cast<int>(f_vector.size()) - 1;
  for (const auto& [i, v] : b.values()) {
    if (v != 0) hi = std::max(hi, i);
  }
  return Json{{"f_vector", f_vector}, {"betti", betti_to_json(b, -1, hi)}, {"euler", alternating_sum(f_vector)}};
}

Json xspace_to_json(const NumberPartition& lambda, const XSpace& x) {
  // An unreachable type is a point by convention and has no forest cells.
  auto j = complex_to_json(x.reachable ? x.space.f_vector() : std::vector<int>{1}, x.betti);
  j["lambda"] = lambda.to_string();
  j["mu"] = x.mu.to_string();
  j["empty"] = x.empty;
  j["reachable"] = x.reachable;
  return j;
}

Json collapse_to_json(const CollapseCertificate& c) {
  return Json{{"k", c.k},
              {"mu", c.mu.to_string()},
              {"f_vector", c.f_vector},
              {"K", c.k_shape},
              {"K_f_vector", c.k_f_vector},
              {"apex", c.apex},
              {"matched", c.matched},
              {"critical", c.critical},
              {"acyclic", c.acyclic},
              {"perfect", c.perfect},
              {"xi_monotone", c.xi_monotone},
              {"insertion_agrees", c.insertion_agrees},
              {"betti_zero", c.betti_zero},
              {"ok", c.ok()}};
}

Json cone_to_json(const ConeCertificate& c) {
  return Json{{"lambda", c.lambda.to_string()},
              {"mu", c.mu.to_string()},
              {"reachable", c.reachable},
              {"f_vector", c.f_vector},
              {"apex", c.apex},
              {"matched", c.matched},
              {"critical", c.critical},
              {"acyclic", c.acyclic},
              {"perfect", c.perfect},
              {"betti_zero", c.betti_zero},
              {"ok", c.ok()}};
}

Json oracle_to_json(const OracleReport& r) {
  Json dims = Json::array();
  for (const auto& d : r.dims) {
    dims.push_back(Json{{"dim", d.dim}, {"oracle", d.oracle_cells}, {"forest", d.forest_cells}, {"literal", d.literal_cells}});
  }
  return Json{{"lambda", r.lambda.to_string()},
              {"mu", r.mu.to_string()},
              {"pi", r.pi.to_string()},
              {"oracle_reachable", r.oracle_reachable},
              {"forest_reachable", r.forest_reachable},
              {"cells", std::move(dims)},
              {"psi_bijective", r.psi_bijective},
              {"psi_constant_on_orbits", r.psi_constant_on_orbits},
              {"faces_match", r.faces_match},
              {"collisions", r.collisions},
              {"oracle_betti", r.oracle_betti.to_string()},
              {"forest_betti", r.forest_betti.to_string()},
              {"literal_betti", r.literal_betti.to_string()},
              {"betti_equal", r.betti_equal},
              {"literal_matches", r.literal_matches},
              {"swept", r.swept},
              {"sweep_matches", r.sweep_matches},
              {"ok", r.ok()}};
}

Json sigma_to_json(const SigmaReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back(Json{{"mu", t.mu.to_string()},
                         {"empty", t.empty},
                         {"reachable", t.reachable},
                         {"f_vector", t.f_vector},
                         {"betti", t.betti.to_string()},
                         {"shift", t.shift}});
  }
  const int top = 2 * r.lambda.length();
  int hi = top;
  for (const auto& [i, v] : r.betti.values()) {
    if (v != 0) hi = std::max(hi, i);
  }
  return Json{{"lambda", r.lambda.to_string()},
              {"n", r.lambda.total()},
              {"terms", std::move(terms)},
              {"betti", betti_to_json(r.betti, 0, hi)},
              {"reachability_cross_checked", r.reachability_cross_checked},
              {"top_class_only", is_top_class_only(r)},
              {"vanishing", vanishing_check(r)}};
}

Json arnold_to_json(const std::vector<ArnoldCase>& cases) {
  Json out = Json::array();
  bool all = true;
  for (const auto& c : cases) {
    all = all && c.pass;
    out.push_back(Json{{"lambda", c.lambda.to_string()},
                       {"k", c.k},
                       {"m", c.m},
                       {"betti", c.betti.to_string()},
                       {"pass", c.pass}});
  }
  return Json{{"cases", std::move(out)}, {"all_pass", all}};
}

Json beta0_to_json(const Beta0Report& r) {
  return Json{{"lambda", r.lambda.to_string()},
              {"mu", r.mu.to_string()},
              {"elements", r.elements},
              {"relations", r.relations},
              {"beta0_poset", r.beta0_poset},
              {"beta0_forest", r.beta0_forest},
              {"vertices_match", r.vertices_match},
              {"edges_match", r.edges_match},
              {"ok", r.ok()}};
}

}  // namespace strata
