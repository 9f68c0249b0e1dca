// mhyp: command-line front end over the C API.
//
// Exit codes: 0 ok, 1 parse/dimension error, 2 no convergence or numerical
// failure, 3 precondition, 4 hypothesis, 5 uncertified, 6 boundary,
// 7 not reducible, 8 verification failed, 9 internal error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhyp/mhyp.h"

namespace {

enum Exit : int {
  kOk = 0,
  kParse = 1,
  kNoConvergence = 2,
  kPrecondition = 3,
  kHypothesis = 4,
  kUncertified = 5,
  kBoundary = 6,
  kNotReducible = 7,
  kVerifyFailed = 8,
  kInternal = 9,
};

int exit_for(mhyp_status s) {
  switch (s) {
    case MHYP_OK: return kOk;
    case MHYP_PARSE_ERROR:
    case MHYP_DIMENSION_MISMATCH:
    case MHYP_INVALID_MATRIX: return kParse;
    case MHYP_NO_CONVERGENCE:
    case MHYP_EIGEN_FAILURE:
    case MHYP_ROOT_FAILURE: return kNoConvergence;
    case MHYP_HYPOTHESIS_VIOLATION: return kHypothesis;
    case MHYP_INTERNAL_ERROR: return kInternal;
    default: return kPrecondition;
  }
}

struct Failure {
  int code;
};

void check(mhyp_status s) {
  if (s == MHYP_OK) return;
  std::cerr << "error [" << mhyp_status_name(s) << "]: " << mhyp_last_error() << "\n";
  throw Failure{exit_for(s)};
}

[[noreturn]] void fail(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw Failure{code};
}

struct StringDeleter {
  void operator()(char* s) const { mhyp_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Params = std::unique_ptr<mhyp_params, HandleDeleter<mhyp_params, mhyp_params_free>>;
using Solutions =
    std::unique_ptr<mhyp_solutions, HandleDeleter<mhyp_solutions, mhyp_solutions_free>>;
using Equation = std::unique_ptr<mhyp_equation, HandleDeleter<mhyp_equation, mhyp_equation_free>>;
using Reduction =
    std::unique_ptr<mhyp_reduction, HandleDeleter<mhyp_reduction, mhyp_reduction_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kParse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(kParse, "cannot write " + out_path);
  out << text;
  if (!out) fail(kParse, "write failed for " + out_path);
}

Params load_params(const std::string& path) {
  mhyp_params* p = nullptr;
  check(mhyp_params_from_json(read_file(path).c_str(), &p));
  return Params(p);
}

// Strict complex literal: "1.5", "-2e-3", "0.5+2i", "1-i", "3i", "-0.25i".
std::complex<double> parse_complex(const std::string& text) {
  static const std::string num = R"((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex full("^([+-]?" + num + ")(?:([+-])(" + num + ")?i)?$");
  static const std::regex imag_only("^([+-]?)(" + num + ")?i$");
  std::smatch m;
  if (std::regex_match(text, m, full)) {
    const double re = std::stod(m[1].str());
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    return {re, im};
  }
  if (std::regex_match(text, m, imag_only)) {
    double im = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[1].str() == "-") im = -im;
    return {0.0, im};
  }
  fail(kParse, "malformed complex literal '" + text + "' (expected re+imi)");
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/* ---- commands ---------------------------------------------------------- */

struct EvalArgs {
  std::string params;
  std::string z = "0";
  std::string shift;
  bool boundary = false;
  double tol = 1e-12;
  int max_terms = 10000;
  std::string out;
};

int cmd_eval(const EvalArgs& a) {
  const auto z = parse_complex(a.z);
  std::optional<std::complex<double>> shift;
  if (!a.shift.empty()) shift = parse_complex(a.shift);
  Params p = load_params(a.params);
  mhyp_eval_options opt;
  mhyp_eval_options_default(&opt);
  opt.tol = a.tol;
  opt.max_terms = a.max_terms;
  opt.allow_boundary = a.boundary ? 1 : 0;
  const double sh[2] = {shift ? shift->real() : 0.0, shift ? shift->imag() : 0.0};
  char* json = nullptr;
  check(mhyp_eval_json(p.get(), shift ? sh : nullptr, z.real(), z.imag(), &opt, &json));
  OwnedString owned(json);
  emit(json, a.out);
  return kOk;
}

struct BasisArgs {
  std::string params;
  int truncation = 40;
  bool analytic_only = false;
  double tol = 1e-10;
  std::string out;
};

int cmd_basis(const BasisArgs& a) {
  Params p = load_params(a.params);
  mhyp_solutions* s = nullptr;
  if (a.analytic_only) {
    check(mhyp_analytic_basis(p.get(), a.truncation, &s));
  } else {
    check(mhyp_fundamental_set(p.get(), a.truncation, &s));
  }
  Solutions sols(s);
  char* json = nullptr;
  check(mhyp_solutions_to_json(sols.get(), p.get(), a.tol, &json));
  OwnedString owned(json);
  emit(json, a.out);
  int all = 0;
  check(mhyp_solutions_check(sols.get(), p.get(), a.tol, nullptr, &all));
  if (!all) {
    std::cerr << "verification failed for at least one solution\n";
    return kVerifyFailed;
  }
  return kOk;
}

struct CertifyArgs {
  std::string params;
  double tol = 1e-12;
  std::string out;
};

int cmd_certify(const CertifyArgs& a) {
  Params p = load_params(a.params);
  mhyp_certificate cert{};
  char* json = nullptr;
  check(mhyp_certify(p.get(), a.tol, &cert, &json));
  OwnedString owned(json);
  emit(json, a.out);
  switch (cert.verdict) {
    case MHYP_VERDICT_SATISFIED: return kOk;
    case MHYP_VERDICT_BOUNDARY: return kBoundary;
    case MHYP_VERDICT_NOT_SATISFIED: break;
  }
  return kUncertified;
}

struct ReduceArgs {
  std::string equation;
  double tol = 1e-10;
  std::string out;
};

int finish_reduction(Reduction r, const std::string& out) {
  char* json = nullptr;
  check(mhyp_reduction_to_json(r.get(), &json));
  OwnedString owned(json);
  emit(json, out);
  return mhyp_reduction_is_reduced(r.get()) ? kOk : kNotReducible;
}

int cmd_reduce(const ReduceArgs& a) {
  mhyp_equation* e = nullptr;
  check(mhyp_equation_from_json(read_file(a.equation).c_str(), &e));
  Equation eq(e);
  mhyp_reduction* r = nullptr;
  check(mhyp_reduce(eq.get(), a.tol, &r));
  return finish_reduction(Reduction(r), a.out);
}

struct ExampleArgs {
  int ell = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double k = 0.5;
  bool reduce = false;
  double tol = 1e-10;
  std::string out;
};

int cmd_example(const ExampleArgs& a) {
  if (a.reduce) {
    mhyp_reduction* r = nullptr;
    check(mhyp_reduce_spherical(a.ell, a.alpha, a.beta, a.k, a.tol, &r));
    return finish_reduction(Reduction(r), a.out);
  }
  mhyp_equation* e = nullptr;
  check(mhyp_spherical_example(a.ell, a.alpha, a.beta, a.k, &e));
  Equation eq(e);
  char* json = nullptr;
  check(mhyp_equation_to_json(eq.get(), &json));
  OwnedString owned(json);
  emit(json, a.out);
  return kOk;
}

struct VerifyArgs {
  std::string solutions;
  std::string params;
  double tol = 1e-10;
};

int cmd_verify(const VerifyArgs& a) {
  mhyp_solutions* s = nullptr;
  check(mhyp_solutions_from_json(read_file(a.solutions).c_str(), &s));
  Solutions sols(s);
  Params p = load_params(a.params);
  std::vector<int> passed(static_cast<size_t>(mhyp_solutions_count(sols.get())));
  int all = 0;
  check(mhyp_solutions_check(sols.get(), p.get(), a.tol, passed.data(), &all));
  for (size_t i = 0; i < passed.size(); ++i) {
    double e[2];
    check(mhyp_solution_exponent(sols.get(), static_cast<int>(i), e));
    std::cout << "solution " << i << " exponent " << fmt17(e[0]) << (e[1] < 0 ? "" : "+")
              << fmt17(e[1]) << "i: " << (passed[i] ? "pass" : "FAIL") << "\n";
  }
  std::cout << (all ? "all solutions pass" : "verification failed") << " at tol "
            << fmt17(a.tol) << "\n";
  return all ? kOk : kVerifyFailed;
}

struct ProbeArgs {
  std::string params;
  std::string z = "1";
  long long max_terms = 100000;
  double lambda_prime = 0.0;
  long long stride = 1000;
  std::string out;
};

int cmd_probe(const ProbeArgs& a) {
  const auto z = parse_complex(a.z);
  Params p = load_params(a.params);
  char* csv = nullptr;
  check(mhyp_boundary_probe_csv(p.get(), z.real(), z.imag(), a.max_terms, a.lambda_prime,
                                a.stride, &csv, nullptr));
  OwnedString owned(csv);
  emit(csv, a.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix hypergeometric functions: evaluation, series solutions, reduction"};
  app.require_subcommand(1);
  const auto positive = CLI::PositiveNumber;

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate nFm (or its shifted variant) at z");
  eval->add_option("params", ev.params, "Parameter file")->required();
  eval->add_option("--z", ev.z, "Argument as re+imi")->required();
  eval->add_option("--shift", ev.shift, "Shift p as re+imi; evaluates the shifted series");
  eval->add_flag("--boundary", ev.boundary, "Allow |z| = 1 when n = m + 1");
  eval->add_option("--tol", ev.tol, "Relative truncation tolerance")->check(positive);
  eval->add_option("--max-terms", ev.max_terms, "Term cap")->check(positive);
  eval->add_option("--out", ev.out, "Output file (default stdout)");

  BasisArgs ba;
  auto* basis = app.add_subcommand("basis", "Construct series solutions of the ODE");
  basis->add_option("params", ba.params, "Parameter file")->required();
  basis->add_option("--truncation", ba.truncation, "Number of series coefficients")->check(positive);
  basis->add_flag("--analytic-only", ba.analytic_only, "Only the analytic solutions");
  basis->add_option("--tol", ba.tol, "Recursion check tolerance")->check(positive);
  basis->add_option("--out", ba.out, "Output file (default stdout)");

  CertifyArgs ce;
  auto* certify = app.add_subcommand("certify", "Unit-circle convergence certificate");
  certify->add_option("params", ce.params, "Parameter file")->required();
  certify->add_option("--tol", ce.tol, "Hermitian and boundary tolerance")->check(positive);
  certify->add_option("--out", ce.out, "Output file (default stdout)");

  ReduceArgs re;
  auto* reduce = app.add_subcommand("reduce", "Reduce a second-order equation to hypergeometric form");
  reduce->add_option("equation", re.equation, "Equation file")->required();
  reduce->add_option("--tol", re.tol, "Residual tolerance")->check(positive);
  reduce->add_option("--out", re.out, "Output file (default stdout)");

  ExampleArgs ex;
  auto* example = app.add_subcommand("example", "Generate the spherical-function equation");
  example->add_option("--ell", ex.ell, "Size parameter (matrices are (ell+1)x(ell+1))")->required();
  example->add_option("--alpha", ex.alpha, "alpha > -1")->required();
  example->add_option("--beta", ex.beta, "beta > -1")->required();
  example->add_option("--k", ex.k, "0 < k < beta + 1")->required();
  example->add_flag("--reduce", ex.reduce, "Emit the closed-form reduction instead");
  example->add_option("--tol", ex.tol, "Residual tolerance for --reduce")->check(positive);
  example->add_option("--out", ex.out, "Output file (default stdout)");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Check series coefficients against the recursion");
  verify->add_option("solutions", ve.solutions, "Solution file")->required();
  verify->add_option("params", ve.params, "Parameter file")->required();
  verify->add_option("--tol", ve.tol, "Relative tolerance")->check(positive);

  ProbeArgs pr;
  auto* probe = app.add_subcommand("probe", "Trace partial sums on the unit circle as CSV");
  probe->add_option("params", pr.params, "Parameter file")->required();
  probe->add_option("--z", pr.z, "Argument as re+imi");
  probe->add_option("--max-terms", pr.max_terms, "Number of terms")->check(positive);
  probe->add_option("--lambda", pr.lambda_prime, "Weight exponent lambda'");
  probe->add_option("--stride", pr.stride, "Row stride")->check(positive);
  probe->add_option("--out", pr.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*eval) return cmd_eval(ev);
    if (*basis) return cmd_basis(ba);
    if (*certify) return cmd_certify(ce);
    if (*reduce) return cmd_reduce(re);
    if (*example) return cmd_example(ex);
    if (*verify) return cmd_verify(ve);
    if (*probe) return cmd_probe(pr);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
