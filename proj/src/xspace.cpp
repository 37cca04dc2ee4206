#include "strata/xspace.hpp"

#include "strata/errors.hpp"

namespace strata {

ChainComplex forest_complex(const ForestCells& cells) {
  std::vector<std::vector<CellSpec>> specs;
  for (std::size_t r = 0; r < cells.by_rank.size(); ++r) {
    std::vector<CellSpec> dim;
    dim.reserve(cells.by_rank[r].size());
    for (const auto& f : cells.by_rank[r]) {
      CellSpec spec{f.key(), {}};
      if (r > 0) {
        for (const auto& [coef, face] : boundary(f)) spec.faces.emplace_back(coef, face.key());
      }
      dim.push_back(std::move(spec));
    }
    specs.push_back(std::move(dim));
  }
  return ChainComplex::build(specs);
}

XSpace build_family_space(const Admissible& admissible, const NumberPartition& mu, const Guards& guards,
                          bool cross_check_ranks) {
  XSpace x;
  x.mu = mu;
  x.cells = enumerate_all_forests(admissible, mu, guards);
  x.space = forest_space(x.cells);
  x.complex = forest_complex(x.cells);
  if (x.complex.f_vector() != x.space.f_vector()) {
    throw ConsistencyError("forest complex and triangulated space disagree on cell counts");
  }
  x.betti = reduced_betti(x.complex, cross_check_ranks);
  return x;
}

XSpace build_x_space(const NumberPartition& lambda, const NumberPartition& mu, ForestModel model,
                     const Guards& guards, bool cross_check_ranks) {
  if (lambda.total() != mu.total() || !refines_number(lambda, mu)) {
    throw InvalidInput(lambda.to_string() + " does not refine " + mu.to_string());
  }
  if (lambda == mu) {
    XSpace x;
    x.mu = mu;
    x.empty = true;
    x.cells.mu = mu;
    x.space.finalize();
    x.betti = BettiVector::empty_space();
    return x;
  }
  if (model == ForestModel::join_closed && !is_join_type(lambda, mu)) {
    XSpace x;
    x.mu = mu;
    x.reachable = false;
    x.cells.mu = mu;
    x.space.finalize();
    x.betti = BettiVector::point();
    return x;
  }
  return build_family_space(lambda_admissible(lambda, model), mu, guards, cross_check_ranks);
}

}  // namespace strata
