#pragma once

// Text formats shared by the CLI and the C API. Complex numbers are [re, im]
// pairs; matrices are {"dim": r, "entries": [...]} with row-major entries.
// Doubles are written in shortest round-trip form, so read(write(x)) == x.
// Malformed input raises Error{ParseError} naming the offending field.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mhyp/convergence.hpp"
#include "mhyp/hyperfn.hpp"
#include "mhyp/odesolve.hpp"
#include "mhyp/reduce.hpp"

namespace mhyp::io {

using json = nlohmann::json;

json complex_to_json(Complex c);
Complex complex_from_json(const json& j, const std::string& field);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& field = "matrix");

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, const std::string& field);

json params_to_json(const HypergeometricParams& p);
HypergeometricParams params_from_json(const json& j);

json solution_to_json(const SeriesSolution& s);
SeriesSolution solution_from_json(const json& j, const std::string& field = "solution");

/// Accepts a single solution object or {"solutions": [...]}.
std::vector<SeriesSolution> solutions_from_json(const json& j);

json equation_to_json(const SecondOrderEquation& eq);
SecondOrderEquation equation_from_json(const json& j);

json eval_result_to_json(const EvaluationResult& r);
json certificate_to_json(const ConvergenceCertificate& c);
json reduction_to_json(const ReductionResult& r);

/// Parses text, mapping syntax errors to ParseError.
json parse(std::string_view text);
std::string dump(const json& j);

}  // namespace mhyp::io
