#include "mhyp/mhyp.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "mhyp/convergence.hpp"
#include "mhyp/hyperfn.hpp"
#include "mhyp/odesolve.hpp"
#include "mhyp/reduce.hpp"
#include "mhyp/serialize.hpp"

struct mhyp_matrix {
  mhyp::ComplexMatrix m;
};

struct mhyp_params {
  mhyp::HypergeometricParams p;
};

struct mhyp_solutions {
  std::vector<mhyp::SeriesSolution> sols;
};

struct mhyp_equation {
  mhyp::SecondOrderEquation eq;
};

struct mhyp_reduction {
  mhyp::ReductionResult result;
};

namespace {

thread_local std::string g_last_error;

mhyp_status set_error(mhyp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
mhyp_status guarded(Fn&& fn) {
  try {
    fn();
    return MHYP_OK;
  } catch (const mhyp::Error& e) {
    return set_error(static_cast<mhyp_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MHYP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MHYP_INTERNAL_ERROR, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw mhyp::Error(mhyp::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_matrix(const mhyp::DenseMatrix& m, double* out) {
  const auto r = m.rows();
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      out[2 * (i * r + j)] = m(i, j).real();
      out[2 * (i * r + j) + 1] = m(i, j).imag();
    }
  }
}

mhyp::EvalOptions to_options(const mhyp_eval_options* o) {
  mhyp::EvalOptions opt;
  if (o) {
    opt.tol = o->tol;
    opt.max_terms = o->max_terms;
    opt.allow_boundary = o->allow_boundary != 0;
  }
  return opt;
}

void fill_info(const mhyp::EvaluationResult& r, mhyp_eval_info* info) {
  if (!info) return;
  info->terms_used = r.terms_used;
  info->truncation_bound = r.truncation_bound;
  info->converged = r.converged ? 1 : 0;
}

std::vector<mhyp::ComplexMatrix> collect(const mhyp_matrix* const* list, int count) {
  require(count >= 0, "negative matrix count");
  require(count == 0 || list != nullptr, "matrix list is NULL");
  std::vector<mhyp::ComplexMatrix> out;
  for (int i = 0; i < count; ++i) {
    require(list[i] != nullptr, "NULL matrix in list");
    out.push_back(list[i]->m);
  }
  return out;
}

}  // namespace

extern "C" {

const char* mhyp_status_name(mhyp_status status) {
  switch (status) {
    case MHYP_OK: return "OK";
    case MHYP_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(mhyp::ErrorCode::InvalidArgument)) {
    return mhyp::error_code_name(static_cast<mhyp::ErrorCode>(code)).data();
  }
  return "Unknown";
}

const char* mhyp_last_error(void) { return g_last_error.c_str(); }

void mhyp_string_free(char* s) { std::free(s); }

/* matrices */

mhyp_status mhyp_matrix_create(int dim, const double* entries, mhyp_matrix** out) {
  return guarded([&] {
    require(out != nullptr && entries != nullptr, "NULL argument");
    require(dim > 0, "dim must be positive");
    std::vector<mhyp::Complex> vals(static_cast<size_t>(dim) * static_cast<size_t>(dim));
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = {entries[2 * i], entries[2 * i + 1]};
    *out = new mhyp_matrix{mhyp::ComplexMatrix::from_rows(dim, vals)};
  });
}

void mhyp_matrix_free(mhyp_matrix* m) { delete m; }

int mhyp_matrix_dim(const mhyp_matrix* m) { return m ? m->m.dim() : 0; }

mhyp_status mhyp_matrix_entries(const mhyp_matrix* m, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    write_matrix(m->m.mat(), out);
  });
}

mhyp_status mhyp_matrix_from_json(const char* text, mhyp_matrix** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_matrix{mhyp::io::matrix_from_json(mhyp::io::parse(text))};
  });
}

mhyp_status mhyp_matrix_to_json(const mhyp_matrix* m, char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(mhyp::io::dump(mhyp::io::matrix_to_json(m->m)));
  });
}

mhyp_status mhyp_spectral_norm(const mhyp_matrix* m, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    *out = mhyp::spectral_norm(m->m);
  });
}

mhyp_status mhyp_eigenvalues(const mhyp_matrix* m, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    const auto s = mhyp::eigenvalues(m->m);
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
      out[2 * i] = s.eigenvalues[i].real();
      out[2 * i + 1] = s.eigenvalues[i].imag();
    }
  });
}

mhyp_status mhyp_pochhammer(double w_re, double w_im, unsigned long long j, double* out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    const auto v = mhyp::pochhammer({w_re, w_im}, j);
    out[0] = v.real();
    out[1] = v.imag();
  });
}

/* parameters */

mhyp_status mhyp_params_create(int dim, const mhyp_matrix* const* numerator, int n,
                               const mhyp_matrix* const* denominator, int m, mhyp_params** out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    auto num = collect(numerator, n);
    auto den = collect(denominator, m);
    const int declared = (n == 0 && m == 0) ? dim : -1;
    *out = new mhyp_params{mhyp::HypergeometricParams(std::move(num), std::move(den), declared)};
  });
}

mhyp_status mhyp_params_from_json(const char* text, mhyp_params** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_params{mhyp::io::params_from_json(mhyp::io::parse(text))};
  });
}

mhyp_status mhyp_params_to_json(const mhyp_params* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(mhyp::io::dump(mhyp::io::params_to_json(p->p)));
  });
}

void mhyp_params_free(mhyp_params* p) { delete p; }
int mhyp_params_dim(const mhyp_params* p) { return p ? p->p.dim() : 0; }
int mhyp_params_n(const mhyp_params* p) { return p ? p->p.n() : 0; }
int mhyp_params_m(const mhyp_params* p) { return p ? p->p.m() : 0; }

/* evaluation */

void mhyp_eval_options_default(mhyp_eval_options* opt) {
  if (!opt) return;
  const mhyp::EvalOptions d;
  opt->tol = d.tol;
  opt->max_terms = d.max_terms;
  opt->allow_boundary = d.allow_boundary ? 1 : 0;
}

mhyp_status mhyp_eval(const mhyp_params* p, double z_re, double z_im,
                      const mhyp_eval_options* options, double* value, mhyp_eval_info* info) {
  return guarded([&] {
    require(p != nullptr && value != nullptr, "NULL argument");
    const auto r = mhyp::eval_nFm(p->p, {z_re, z_im}, to_options(options));
    write_matrix(r.value.mat(), value);
    fill_info(r, info);
  });
}

mhyp_status mhyp_eval_shifted(const mhyp_params* p, double p_re, double p_im, double z_re,
                              double z_im, const mhyp_eval_options* options, double* value,
                              mhyp_eval_info* info) {
  return guarded([&] {
    require(p != nullptr && value != nullptr, "NULL argument");
    const auto r = mhyp::eval_shifted_nFm(p->p, {p_re, p_im}, {z_re, z_im}, to_options(options));
    write_matrix(r.value.mat(), value);
    fill_info(r, info);
  });
}

mhyp_status mhyp_eval_json(const mhyp_params* p, const double* shift, double z_re, double z_im,
                           const mhyp_eval_options* options, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    const mhyp::Complex z(z_re, z_im);
    const auto r = shift ? mhyp::eval_shifted_nFm(p->p, {shift[0], shift[1]}, z, to_options(options))
                         : mhyp::eval_nFm(p->p, z, to_options(options));
    auto j = mhyp::io::eval_result_to_json(r);
    j["z"] = mhyp::io::complex_to_json(z);
    if (shift) j["shift"] = mhyp::io::complex_to_json({shift[0], shift[1]});
    *out = copy_string(mhyp::io::dump(j));
  });
}

/* convergence */

mhyp_radius_class mhyp_classify_radius(int n, int m) {
  switch (mhyp::classify_radius(n, m)) {
    case mhyp::RadiusClass::Entire: return MHYP_RADIUS_ENTIRE;
    case mhyp::RadiusClass::UnitDisk: return MHYP_RADIUS_UNIT_DISK;
    case mhyp::RadiusClass::DivergentOutsideZero: break;
  }
  return MHYP_RADIUS_DIVERGENT_OUTSIDE_ZERO;
}

mhyp_status mhyp_certify(const mhyp_params* p, double tol, mhyp_certificate* out, char** json) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    require(tol > 0.0, "tolerance must be positive");
    const auto c = mhyp::unit_circle_certificate(p->p, tol);
    out->satisfied = c.satisfied ? 1 : 0;
    out->verdict = c.verdict == mhyp::CertificateVerdict::Satisfied ? MHYP_VERDICT_SATISFIED
                   : c.verdict == mhyp::CertificateVerdict::Boundary ? MHYP_VERDICT_BOUNDARY
                                                                      : MHYP_VERDICT_NOT_SATISFIED;
    out->lambda = c.lambda;
    out->delta_sum = c.delta_sum;
    out->norm_sum = c.norm_sum;
    out->all_hermitian = 1;
    for (bool h : c.hermitian_check) out->all_hermitian &= h ? 1 : 0;
    out->pole_in_denominator = c.pole_in_denominator ? 1 : 0;
    if (json) *json = copy_string(mhyp::io::dump(mhyp::io::certificate_to_json(c)));
  });
}

mhyp_status mhyp_boundary_probe_csv(const mhyp_params* p, double z_re, double z_im,
                                    long long max_terms, double lambda_prime, long long stride,
                                    char** csv, double* final_sum) {
  return guarded([&] {
    require(p != nullptr && csv != nullptr, "NULL argument");
    const auto probe = mhyp::boundary_probe(p->p, {z_re, z_im}, max_terms, lambda_prime, stride);
    std::ostringstream os;
    mhyp::write_probe_csv(os, probe);
    *csv = copy_string(os.str());
    if (final_sum) write_matrix(probe.final_sum, final_sum);
  });
}

/* solutions */

mhyp_status mhyp_indicial_roots(const mhyp_params* p, double* out, int capacity, int* count) {
  return guarded([&] {
    require(p != nullptr && count != nullptr, "NULL argument");
    require(capacity == 0 || out != nullptr, "NULL output buffer");
    const auto roots = mhyp::indicial_roots(mhyp::HypergeometricEquation(p->p)).expanded();
    *count = static_cast<int>(roots.size());
    for (int i = 0; i < std::min(capacity, *count); ++i) {
      out[2 * i] = roots[static_cast<size_t>(i)].real();
      out[2 * i + 1] = roots[static_cast<size_t>(i)].imag();
    }
  });
}

mhyp_status mhyp_analytic_basis(const mhyp_params* p, int truncation, mhyp_solutions** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_solutions{mhyp::analytic_basis(mhyp::HypergeometricEquation(p->p), truncation)};
  });
}

mhyp_status mhyp_nonanalytic_solution(const mhyp_params* p, double beta_re, double beta_im,
                                      int truncation, mhyp_solutions** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_solutions{mhyp::nonanalytic_solution(mhyp::HypergeometricEquation(p->p),
                                                         {beta_re, beta_im}, truncation)};
  });
}

mhyp_status mhyp_fundamental_set(const mhyp_params* p, int truncation, mhyp_solutions** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_solutions{mhyp::fundamental_set(mhyp::HypergeometricEquation(p->p), truncation)};
  });
}

mhyp_status mhyp_solutions_from_json(const char* text, mhyp_solutions** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_solutions{mhyp::io::solutions_from_json(mhyp::io::parse(text))};
  });
}

mhyp_status mhyp_solutions_to_json(const mhyp_solutions* s, const mhyp_params* p, double rel_tol,
                                   char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "NULL argument");
    mhyp::io::json j;
    j["solutions"] = mhyp::io::json::array();
    for (const auto& sol : s->sols) j["solutions"].push_back(mhyp::io::solution_to_json(sol));
    if (p) {
      const mhyp::HypergeometricEquation eq(p->p);
      mhyp::io::json ver = mhyp::io::json::array();
      bool all = true;
      for (size_t i = 0; i < s->sols.size(); ++i) {
        const bool ok = mhyp::check_recursion(eq, s->sols[i], rel_tol);
        all = all && ok;
        ver.push_back({{"index", i}, {"recursion_check", ok}});
      }
      j["verification"] = {{"rel_tol", rel_tol}, {"all_passed", all}, {"per_solution", ver}};
    }
    *out = copy_string(mhyp::io::dump(j));
  });
}

int mhyp_solutions_count(const mhyp_solutions* s) {
  return s ? static_cast<int>(s->sols.size()) : 0;
}

mhyp_status mhyp_solution_exponent(const mhyp_solutions* s, int index, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "NULL argument");
    require(index >= 0 && index < static_cast<int>(s->sols.size()), "index out of range");
    const auto e = s->sols[static_cast<size_t>(index)].exponent;
    out[0] = e.real();
    out[1] = e.imag();
  });
}

mhyp_status mhyp_solution_evaluate(const mhyp_solutions* s, int index, double z_re, double z_im,
                                   double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "NULL argument");
    require(index >= 0 && index < static_cast<int>(s->sols.size()), "index out of range");
    const auto v = mhyp::evaluate_solution(s->sols[static_cast<size_t>(index)], {z_re, z_im});
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out[2 * i] = v(i).real();
      out[2 * i + 1] = v(i).imag();
    }
  });
}

mhyp_status mhyp_solutions_check(const mhyp_solutions* s, const mhyp_params* p, double rel_tol,
                                 int* passed, int* all_passed) {
  return guarded([&] {
    require(s != nullptr && p != nullptr && all_passed != nullptr, "NULL argument");
    require(rel_tol > 0.0, "tolerance must be positive");
    const mhyp::HypergeometricEquation eq(p->p);
    for (const auto& sol : s->sols) {
      if (sol.dim() != eq.dim()) {
        throw mhyp::Error(mhyp::ErrorCode::DimensionMismatch,
                          "solution has dimension " + std::to_string(sol.dim()) +
                              " but parameters have dimension " + std::to_string(eq.dim()));
      }
    }
    *all_passed = 1;
    for (size_t i = 0; i < s->sols.size(); ++i) {
      const bool ok = mhyp::check_recursion(eq, s->sols[i], rel_tol);
      if (passed) passed[i] = ok ? 1 : 0;
      if (!ok) *all_passed = 0;
    }
  });
}

void mhyp_solutions_free(mhyp_solutions* s) { delete s; }

/* second-order equations */

mhyp_status mhyp_equation_create(const mhyp_matrix* C, const mhyp_matrix* U, const mhyp_matrix* V,
                                 mhyp_equation** out) {
  return guarded([&] {
    require(C && U && V && out, "NULL argument");
    *out = new mhyp_equation{mhyp::SecondOrderEquation(C->m, U->m, V->m)};
  });
}

mhyp_status mhyp_equation_from_json(const char* text, mhyp_equation** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "NULL argument");
    *out = new mhyp_equation{mhyp::io::equation_from_json(mhyp::io::parse(text))};
  });
}

mhyp_status mhyp_equation_to_json(const mhyp_equation* eq, char** out) {
  return guarded([&] {
    require(eq != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(mhyp::io::dump(mhyp::io::equation_to_json(eq->eq)));
  });
}

int mhyp_equation_dim(const mhyp_equation* eq) { return eq ? eq->eq.dim() : 0; }

mhyp_status mhyp_spherical_example(int ell, double alpha, double beta, double k,
                                   mhyp_equation** out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    *out = new mhyp_equation{mhyp::spherical_example(ell, alpha, beta, k)};
  });
}

void mhyp_equation_free(mhyp_equation* eq) { delete eq; }

mhyp_status mhyp_reduce(const mhyp_equation* eq, double tol, mhyp_reduction** out) {
  return guarded([&] {
    require(eq != nullptr && out != nullptr, "NULL argument");
    require(tol > 0.0, "tolerance must be positive");
    mhyp::ReduceOptions opt;
    opt.tol = tol;
    *out = new mhyp_reduction{mhyp::reduce_to_hypergeometric(eq->eq, opt)};
  });
}

mhyp_status mhyp_reduce_spherical(int ell, double alpha, double beta, double k, double tol,
                                  mhyp_reduction** out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    require(tol > 0.0, "tolerance must be positive");
    *out = new mhyp_reduction{mhyp::reduce_spherical_example(ell, alpha, beta, k, tol)};
  });
}

int mhyp_reduction_is_reduced(const mhyp_reduction* r) {
  return r && r->result.status == mhyp::ReductionStatus::Reduced ? 1 : 0;
}

mhyp_status mhyp_reduction_matrices(const mhyp_reduction* r, double* A, double* B) {
  return guarded([&] {
    require(r != nullptr && A != nullptr && B != nullptr, "NULL argument");
    require(r->result.A.has_value() && r->result.B.has_value(), "equation was not reduced");
    write_matrix(r->result.A->mat(), A);
    write_matrix(r->result.B->mat(), B);
  });
}

mhyp_status mhyp_reduction_to_json(const mhyp_reduction* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(mhyp::io::dump(mhyp::io::reduction_to_json(r->result)));
  });
}

void mhyp_reduction_free(mhyp_reduction* r) { delete r; }

}  // extern "C"
