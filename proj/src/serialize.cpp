#include "mhyp/serialize.hpp"

#include <cmath>

namespace mhyp::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(field + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "non-finite number");
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

std::vector<ComplexMatrix> matrix_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json diagnostics_to_json(const ReductionDiagnostics& d) {
  return {{"solvent_residual", d.solvent_residual},
          {"sum_residual", d.sum_residual},
          {"product_residual", d.product_residual},
          {"scale", d.scale}};
}

}  // namespace

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected [re, im] pair");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.dim(); ++i)
    for (int k = 0; k < m.dim(); ++k) entries.push_back(complex_to_json(m(i, k)));
  return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
  const int dim = integer(require(j, "dim", field), field + ".dim");
  if (dim <= 0) fail(field + ".dim", "must be positive");
  const json& e = require(j, "entries", field);
  if (!e.is_array()) fail(field + ".entries", "expected an array");
  if (e.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim)) {
    fail(field + ".entries", "expected " + std::to_string(dim * dim) + " entries, got " +
                                 std::to_string(e.size()));
  }
  std::vector<Complex> vals;
  vals.reserve(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    vals.push_back(complex_from_json(e[i], field + ".entries[" + std::to_string(i) + "]"));
  }
  return ComplexMatrix::from_rows(dim, vals);
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json params_to_json(const HypergeometricParams& p) {
  json num = json::array();
  json den = json::array();
  for (const auto& a : p.numerator()) num.push_back(matrix_to_json(a));
  for (const auto& b : p.denominator()) den.push_back(matrix_to_json(b));
  return {{"dim", p.dim()}, {"numerator", std::move(num)}, {"denominator", std::move(den)}};
}

HypergeometricParams params_from_json(const json& j) {
  const int dim = integer(require(j, "dim", "params"), "params.dim");
  if (dim <= 0) fail("params.dim", "must be positive");
  auto num = matrix_list(require(j, "numerator", "params"), "params.numerator");
  auto den = matrix_list(require(j, "denominator", "params"), "params.denominator");
  for (const auto* list : {&num, &den}) {
    for (const auto& a : *list) {
      if (a.dim() != dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "params: matrix of dim " + std::to_string(a.dim()) + " but params.dim = " +
                        std::to_string(dim));
      }
    }
  }
  return HypergeometricParams(std::move(num), std::move(den), dim);
}

json solution_to_json(const SeriesSolution& s) {
  json coeffs = json::array();
  for (const Vector& f : s.coefficients) coeffs.push_back(vector_to_json(f));
  json out = {{"exponent", complex_to_json(s.exponent)},
              {"kind", s.kind == SolutionKind::Analytic ? "analytic" : "nonanalytic"},
              {"truncation", s.truncation()},
              {"coefficients", std::move(coeffs)}};
  if (s.kind == SolutionKind::NonAnalytic) out["beta"] = complex_to_json(s.beta);
  return out;
}

SeriesSolution solution_from_json(const json& j, const std::string& field) {
  SeriesSolution s;
  s.exponent = complex_from_json(require(j, "exponent", field), field + ".exponent");
  const json& kind = require(j, "kind", field);
  if (kind == "analytic") {
    s.kind = SolutionKind::Analytic;
  } else if (kind == "nonanalytic") {
    s.kind = SolutionKind::NonAnalytic;
    if (j.contains("beta")) s.beta = complex_from_json(j["beta"], field + ".beta");
  } else {
    fail(field + ".kind", "expected \"analytic\" or \"nonanalytic\"");
  }
  const json& c = require(j, "coefficients", field);
  if (!c.is_array() || c.empty()) fail(field + ".coefficients", "expected a non-empty array");
  for (size_t i = 0; i < c.size(); ++i) {
    s.coefficients.push_back(
        vector_from_json(c[i], field + ".coefficients[" + std::to_string(i) + "]"));
    if (s.coefficients.back().size() != s.coefficients.front().size()) {
      fail(field + ".coefficients[" + std::to_string(i) + "]", "vector length differs from F_0");
    }
  }
  if (j.contains("truncation") &&
      integer(j["truncation"], field + ".truncation") != s.truncation()) {
    fail(field + ".truncation", "does not match the number of coefficients");
  }
  return s;
}

std::vector<SeriesSolution> solutions_from_json(const json& j) {
  std::vector<SeriesSolution> out;
  if (j.is_object() && j.contains("solutions")) {
    const json& list = j["solutions"];
    if (!list.is_array()) fail("solutions", "expected an array");
    for (size_t i = 0; i < list.size(); ++i) {
      out.push_back(solution_from_json(list[i], "solutions[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(solution_from_json(j));
  }
  return out;
}

json equation_to_json(const SecondOrderEquation& eq) {
  return {{"dim", eq.dim()},
          {"C", matrix_to_json(eq.C)},
          {"U", matrix_to_json(eq.U)},
          {"V", matrix_to_json(eq.V)}};
}

SecondOrderEquation equation_from_json(const json& j) {
  const int dim = integer(require(j, "dim", "equation"), "equation.dim");
  ComplexMatrix c = matrix_from_json(require(j, "C", "equation"), "equation.C");
  ComplexMatrix u = matrix_from_json(require(j, "U", "equation"), "equation.U");
  ComplexMatrix v = matrix_from_json(require(j, "V", "equation"), "equation.V");
  if (c.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "equation.C dim disagrees with equation.dim");
  }
  return SecondOrderEquation(std::move(c), std::move(u), std::move(v));
}

json eval_result_to_json(const EvaluationResult& r) {
  return {{"value", matrix_to_json(r.value)},
          {"terms_used", r.terms_used},
          {"truncation_bound", r.truncation_bound},
          {"converged", r.converged}};
}

json certificate_to_json(const ConvergenceCertificate& c) {
  return {{"satisfied", c.satisfied},
          {"verdict", verdict_name(c.verdict)},
          {"lambda", c.lambda},
          {"delta_sum", c.delta_sum},
          {"norm_sum", c.norm_sum},
          {"hermitian_check", c.hermitian_check},
          {"pole_in_denominator", c.pole_in_denominator}};
}

json reduction_to_json(const ReductionResult& r) {
  json out = {{"status", reduction_status_name(r.status)},
              {"best_rank", r.best_rank},
              {"selections_tried", r.selections_tried}};
  json sel = json::array();
  for (const Complex& l : r.lambda_selection) sel.push_back(complex_to_json(l));
  out["lambda_selection"] = std::move(sel);
  json kv = json::array();
  for (const Vector& v : r.kernel_vectors) kv.push_back(vector_to_json(v));
  out["kernel_vectors"] = std::move(kv);
  if (r.A) out["A"] = matrix_to_json(*r.A);
  if (r.B) out["B"] = matrix_to_json(*r.B);
  out["diagnostics"] = diagnostics_to_json(r.diagnostics);
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mhyp::io
