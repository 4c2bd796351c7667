#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qdiss/density.hpp"
#include "qdiss/lindblad.hpp"

namespace qdiss {

using Json = nlohmann::json;

// All readers validate shape and types and throw PreconditionError with a
// field-level message on any mismatch; unknown keys are rejected so that
// config typos fail loudly instead of being ignored.

// Complex matrix as {"re": [[...]], "im": [[...]]} (row-major nested arrays).
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& context);

// Complex vector as {"re": [...], "im": [...]}.
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j, const std::string& context);

// Density matrix as {"dims": [...], "re": [[...]], "im": [[...]]}.
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

// Open-system model:
//   {"dims": [...], "hamiltonian": {re, im}, "form": "gks" | "diagonal",
//    "ops": [{re, im}, ...], "coeff": {re, im} (gks) | "rates": [...] (diagonal)}
// A gks-form model is diagonalized on parse, so consumers always see
// decoupled channels.
struct ParsedModel {
  std::vector<int> dims;
  DiagonalModel model;
  std::string form;
};

ParsedModel model_from_json(const Json& j);

// Reject keys outside `allowed`; `context` names the object in the error.
void require_known_keys(const Json& j, const std::vector<std::string>& allowed,
                        const std::string& context);

}  // namespace qdiss
