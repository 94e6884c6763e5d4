#pragma once

#include "json.hpp"

#include "mvalex/diagrams.hpp"
#include "mvalex/invariant.hpp"
#include "mvalex/laurent.hpp"
#include "mvalex/resolve.hpp"

namespace mvalex {

using Json = nlohmann::ordered_json;

/// [{"coeff": c, "exps": {"a": 2, ...}}, ...] in canonical term order.  Coefficients
/// outside the int64 range are written as decimal strings.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

Json to_json(const RationalFunction& r);
RationalFunction rational_from_json(const Json& j);

/// {"k": 4, "chords": [[0, 3, "dotted"]], "frees": [1, 2]}
Json to_json(const BasisDiagram& d);
BasisDiagram diagram_from_json(const Json& j);

/// {"k": 2, "terms": [{"coeff": poly, "diagram": diagram}]}
Json to_json(const DiagramSum& s);
DiagramSum sum_from_json(const Json& j);

/// {"value", "rawSum", "rotations", "normalizer", "convention"}
Json to_json(const NormalizedInvariant& inv);

Json to_json(const ContractionStats& s);

}  // namespace mvalex
