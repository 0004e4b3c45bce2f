#pragma once

#include <json.hpp>

#include "liekit/common.hpp"
#include "liekit/iwasawa.hpp"
#include "liekit/lattice.hpp"
#include "liekit/lie_algebra.hpp"

namespace liekit {

using Json = nlohmann::json;

/// Matrix wire format: {"dim": d, "field": "real"|"complex",
/// "entries": [[...], ...]} with complex scalars as [re, im] pairs.
Json mat_to_json(const CMat& m, bool as_real);
Json mat_to_json(const RMat& m);
CMat mat_from_json(const Json& j, bool* is_real = nullptr);
RMat rmat_from_json(const Json& j);

/// Vector wire format mirrors the matrix one with a flat entries list.
Json vec_to_json(const CVec& v, bool as_real);
CVec vec_from_json(const Json& j, bool* is_real = nullptr);

Json basis_to_json(const LieBasis& basis);
LieBasis basis_from_json(const Json& j);

Json lattice_to_json(const LatticeBasis& basis);
LatticeBasis lattice_from_json(const Json& j);

Json nak_to_json(const NAKDecomposition& nak);

}  // namespace liekit
