#pragma once

// JSON encodings shared by the CLI and tests. Complex numbers are [re, im]
// pairs; matrices are row-major arrays of rows. dump() writes floats with 17
// significant digits so identical inputs give byte-identical output.

#include <string>
#include <string_view>

#include <json.hpp>

#include "mpsgs/classifier.hpp"
#include "mpsgs/hamiltonian.hpp"
#include "mpsgs/pauli_space.hpp"
#include "mpsgs/states.hpp"
#include "mpsgs/verifier.hpp"

namespace mpsgs::json {

using Json = nlohmann::ordered_json;

/// Compact (indent < 0) or pretty-printed; non-finite numbers become null.
std::string dump(const Json& j, int indent = -1);
/// Throws ValidationError on malformed input.
Json parse(std::string_view text);

Json complex_to_json(Complex z);
/// `what` names the field in error messages.
Complex complex_from_json(const Json& j, std::string_view what);
double real_from_json(const Json& j, std::string_view what);

Json quartet_to_json(const PauliQuartet& q);
PauliQuartet quartet_from_json(const Json& j);

/// {"basis": [quartet, ...]}
Json cspace_to_json(const CSpace& v);
CSpace cspace_from_json(const Json& j, double rank_tol = kDefaultRankTol);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j, std::string_view what);

Json vector_to_json(const Eigen::VectorXcd& v);

/// Object with exactly the keys the family uses ("g", "g1", "g2", "g3",
/// "nu", "nu_prime", "lambda3"); missing or extra keys are rejected.
FamilyParams params_from_json(Family family, const Json& j);
Json params_to_json(const FamilyParams& p);

Json signature_to_json(const InvariantSignature& s);
Json classification_to_json(const ClassificationResult& r, const InvariantSignature& s);
Json spectrum_to_json(const SpectrumReport& r);
Json verify_to_json(const VerifyReport& r);

}  // namespace mpsgs::json
