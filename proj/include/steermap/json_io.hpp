#pragma once

#include <string>

#include "json.hpp"
#include "steermap/dimbound.hpp"
#include "steermap/ensemble.hpp"
#include "steermap/lhs_sdp.hpp"
#include "steermap/separability.hpp"
#include "steermap/steering_map.hpp"

namespace steermap::io {

using nlohmann::json;

// Matrices serialize as nested arrays of [re, im] pairs, row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// { "n", "m", "d", "states": { "a|x": matrix } }
json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j);

// { "dim", "elements": [matrix, ...] }
json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j);

// { "n", "m", "dA", "zs": { "i1,...,in": matrix } }
json zset_to_json(const ZSet& z);
ZSet zset_from_json(const json& j);

// { "nA", "nB", "corr": [[...]], "margA": [...], "margB": [...] }
json correlators_to_json(const CorrelatorTable& t);
CorrelatorTable correlators_from_json(const json& j);

json verdict_to_json(const CriterionVerdict& v);
json verdict_to_json(const DetBoundVerdict& v);
json verdict_to_json(const LhsVerdict& v);

json validation_to_json(const ValidationReport& r);

// FNV-1a hash of the canonical dump, for traceability of report inputs.
std::string input_hash(const json& j);

json load_json_file(const std::string& path);

}  // namespace steermap::io
