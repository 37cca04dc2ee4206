// JSON forms of forests and reports. Objects use sorted keys, so equal
// reports serialize to identical bytes.

#pragma once

#include <json.hpp>

#include "strata/chain_complex.hpp"
#include "strata/forests.hpp"
#include "strata/morse.hpp"
#include "strata/ppos.hpp"
#include "strata/quotient_oracle.hpp"
#include "strata/sigma.hpp"
#include "strata/xspace.hpp"

namespace strata {

using Json = nlohmann::json;

/// {"rank": r, "roots": [{"label": m, "children": [...]}, ...]}
Json forest_to_json(const MarkedForest& f);
/// Inverse of forest_to_json; throws InvalidInput on malformed input.
MarkedForest forest_from_json(const Json& j);

/// Degrees lo..hi, zeros included.
Json betti_to_json(const BettiVector& b, int lo, int hi);

/// {"f_vector", "betti", "euler"}.
Json complex_to_json(const std::vector<int>& f_vector, const BettiVector& b);
Json xspace_to_json(const NumberPartition& lambda, const XSpace& x);

Json collapse_to_json(const CollapseCertificate& c);
Json cone_to_json(const ConeCertificate& c);
Json oracle_to_json(const OracleReport& r);
Json sigma_to_json(const SigmaReport& r);
Json arnold_to_json(const std::vector<ArnoldCase>& cases);
Json beta0_to_json(const Beta0Report& r);

}  // namespace strata
