#pragma once

// JSON forms of the value types. Rationals are "p/q" strings; object keys
// come out sorted, so dumps of equal values are byte-identical.

#include <cstdint>
#include <string>

#include "dualpoly/collision_duals.hpp"
#include "dualpoly/domain.hpp"
#include "dualpoly/lp_oracle.hpp"
#include "dualpoly/symmetrization.hpp"
#include "dualpoly/univariate_duals.hpp"
#include "dualpoly/upper_bounds.hpp"
#include "dualpoly/witness.hpp"
#include "json.hpp"

namespace dualpoly {

using Json = nlohmann::json;

Json to_json(const OrbitClass& c);
OrbitClass orbit_class_from_json(const Json& j);

Json to_json(const FunctionInput& x);
FunctionInput function_input_from_json(const Json& j);

/// {"N","R","classes":[{"class":..,"mass":"p/q"}],"meta":{..}}
Json to_json(const DualWitness& w);
/// Validates shape, class realizability and mass syntax; throws
/// PreconditionError on malformed input.
DualWitness witness_from_json(const Json& j);

Json to_json(const UnivariateDual& d);
Json to_json(const CertificateReport& r);
Json to_json(const PropertyCheck& p);
Json to_json(const TrivariateFit& f);
Json to_json(const ErrorReport& r);
/// Solution plus its instance's degree; phi and the max-error set are
/// listed sparsely by input index.
Json to_json(const LpSolution& s, const LpInstance& inst);
Json to_json(const MaxErrorReport& r);

std::uint64_t fnv1a64(const std::string& bytes);
/// 16 hex digits of the FNV-1a hash of the witness's canonical dump.
std::string witness_fingerprint(const DualWitness& w);

}  // namespace dualpoly
