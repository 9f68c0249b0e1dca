#include "mhyp/odesolve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mhyp {

namespace {

// kernel decisions at computed eigenvalues: sigma_min of the indicial matrix
// is of the order of the eigenvalue error, well above machine precision
constexpr double kIndicialKernelTol = 1e-8;
// eigenvalues closer than this (relative) count as equal for the
// distinctness hypothesis
constexpr double kDistinctTol = 1e-6;
// eigenvector condition number above which B_k is treated as defective
constexpr double kDiagonalizableCond = 1e10;

// (M_1 + s)(M_2 + s) ... (M_q + s) x
Vector apply_product(const std::vector<ComplexMatrix>& mats, Complex s, const Vector& x) {
  Vector y = x;
  for (auto it = mats.rbegin(); it != mats.rend(); ++it) {
    DenseMatrix a = it->mat();
    a.diagonal().array() += s;
    y = a * y;
  }
  return y;
}

double product_norm_bound(const std::vector<ComplexMatrix>& mats, Complex s) {
  double bound = 1.0;
  for (const ComplexMatrix& a : mats) {
    DenseMatrix b = a.mat();
    b.diagonal().array() += s;
    bound *= spectral_norm(b);
  }
  return bound;
}

// Matrix coefficients P_0..P_q of (t + M_1)(t + M_2)...(t + M_q) for scalar t.
std::vector<DenseMatrix> operator_polynomial(const std::vector<ComplexMatrix>& mats, Complex s,
                                             int r) {
  std::vector<DenseMatrix> poly{DenseMatrix::Identity(r, r)};
  for (const ComplexMatrix& a : mats) {
    DenseMatrix shifted = a.mat();
    shifted.diagonal().array() += s;
    std::vector<DenseMatrix> next(poly.size() + 1, DenseMatrix::Zero(r, r));
    for (size_t d = 0; d < poly.size(); ++d) {
      next[d] += poly[d] * shifted;
      next[d + 1] += poly[d];
    }
    poly = std::move(next);
  }
  return poly;
}

std::string fmt(Complex c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (std::signbit(c.imag()) ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

bool near_positive_integer(Complex w, double tol) {
  const double k = std::round(w.real());
  return k >= 1.0 && std::abs(w - Complex(k, 0.0)) <= tol;
}

void require_truncation(int truncation) {
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
}

}  // namespace

HypergeometricEquation::HypergeometricEquation(HypergeometricParams params)
    : params_(std::move(params)) {
  if (order() < 1) {
    throw Error(ErrorCode::InvalidArgument, "equation order max(n, m) must be at least 1");
  }
}

std::vector<Complex> IndicialRoots::expanded() const {
  std::vector<Complex> out;
  for (const IndicialRoot& root : roots)
    for (int k = 0; k < root.multiplicity; ++k) out.push_back(root.value);
  return out;
}

IndicialRoots indicial_roots(const HypergeometricEquation& eq) {
  IndicialRoots out;
  auto add = [&](Complex v) {
    for (IndicialRoot& root : out.roots) {
      if (std::abs(root.value - v) <= kPoleTol) {
        ++root.multiplicity;
        return;
      }
    }
    out.roots.push_back({v, 1});
  };
  const int r = eq.dim();
  for (int i = 0; i < r; ++i) add(Complex(0.0, 0.0));
  for (const Spectrum& s : eq.params().denominator_spectra())
    for (const Complex& beta : s.eigenvalues) add(Complex(1.0, 0.0) - beta);
  out.total = r * (eq.params().m() + 1);
  return out;
}

SeriesSolution analytic_solution(const HypergeometricEquation& eq, const Vector& f0,
                                 int truncation) {
  require_truncation(truncation);
  const auto& params = eq.params();
  if (!params.admissible()) {
    const PoleRecord& v = params.violations().front();
    throw Error(ErrorCode::PoleInParameters,
                "B_" + std::to_string(v.index + 1) + " has eigenvalue " + fmt(v.eigenvalue) +
                    " in {0, -1, -2, ...}");
  }
  if (f0.size() != eq.dim()) throw Error(ErrorCode::DimensionMismatch, "F_0 has wrong dimension");
  SeriesSolution sol;
  sol.exponent = Complex(0.0, 0.0);
  sol.kind = SolutionKind::Analytic;
  sol.coefficients.reserve(static_cast<size_t>(truncation));
  sol.coefficients.push_back(f0);
  for (int j = 0; j + 1 < truncation; ++j) {
    const Vector next = apply_symbol_step(params, Complex(0.0, 0.0), j, sol.coefficients.back());
    sol.coefficients.push_back(next / static_cast<double>(j + 1));
  }
  return sol;
}

std::vector<SeriesSolution> analytic_basis(const HypergeometricEquation& eq, int truncation) {
  const int r = eq.dim();
  std::vector<SeriesSolution> out;
  out.reserve(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) out.push_back(analytic_solution(eq, Vector::Unit(r, i), truncation));
  return out;
}

std::vector<SeriesSolution> nonanalytic_solution(const HypergeometricEquation& eq, Complex beta,
                                                 int truncation) {
  require_truncation(truncation);
  const auto& params = eq.params();
  const auto& spectra = params.denominator_spectra();

  if (std::abs(beta - Complex(1.0, 0.0)) <= kPoleTol) {
    throw Error(ErrorCode::ResonantExponent, "beta = 1 reproduces the analytic exponent p = 0");
  }
  if (near_positive_integer(beta, kPoleTol)) {
    throw Error(ErrorCode::ResonantExponent, "beta = " + fmt(beta) + " lies in N = {1, 2, ...}");
  }
  for (size_t k = 0; k < spectra.size(); ++k) {
    for (const Complex& ev : spectra[k].eigenvalues) {
      if (near_positive_integer(beta - ev, kPoleTol)) {
        throw Error(ErrorCode::ResonantExponent,
                    "beta = " + fmt(beta) + " lies in sigma(B_" + std::to_string(k + 1) +
                        ") + N (eigenvalue " + fmt(ev) + ")");
      }
    }
  }

  const Complex p = Complex(1.0, 0.0) - beta;
  const int r = eq.dim();
  DenseMatrix indicial = p * DenseMatrix::Identity(r, r);
  double factor_scale = std::abs(p);
  for (const ComplexMatrix& b : params.denominator()) {
    DenseMatrix shifted = b.mat();
    shifted.diagonal().array() += p - 1.0;
    factor_scale *= std::max(spectral_norm(shifted), std::abs(p - 1.0));
    indicial = indicial * shifted;
  }
  const std::vector<Vector> kernel = kernel_basis(indicial, kIndicialKernelTol, factor_scale);
  if (kernel.empty()) {
    throw Error(ErrorCode::EmptyKernel,
                "indicial matrix at p = " + fmt(p) + " has numerically trivial kernel (beta = " +
                    fmt(beta) + " is not an eigenvalue of any B_k)");
  }

  std::vector<SeriesSolution> out;
  for (const Vector& f_beta : kernel) {
    SeriesSolution sol;
    sol.exponent = p;
    sol.kind = SolutionKind::NonAnalytic;
    sol.beta = beta;
    sol.coefficients.reserve(static_cast<size_t>(truncation));
    sol.coefficients.push_back(f_beta);
    for (int j = 0; j + 1 < truncation; ++j) {
      const Vector next = apply_symbol_step(params, p, j, sol.coefficients.back());
      sol.coefficients.push_back(next / (p + static_cast<double>(j + 1)));
    }
    out.push_back(std::move(sol));
  }
  return out;
}

std::vector<SeriesSolution> fundamental_set(const HypergeometricEquation& eq, int truncation) {
  const auto& params = eq.params();
  std::vector<std::string> failures;
  if (params.n() != params.m() + 1) {
    failures.push_back("n = m + 1 required (n = " + std::to_string(params.n()) +
                       ", m = " + std::to_string(params.m()) + ")");
  }
  for (const PoleRecord& v : params.violations()) {
    failures.push_back("B_" + std::to_string(v.index + 1) + " eigenvalue " + fmt(v.eigenvalue) +
                       " in {0, -1, -2, ...}");
  }

  struct Labeled {
    int k, i;
    Complex beta;
  };
  std::vector<Labeled> all;
  for (int k = 0; k < params.m(); ++k) {
    Eigen::ComplexEigenSolver<DenseMatrix> solver(params.denominator()[static_cast<size_t>(k)].mat());
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "eigensolver failed");
    if (condition_number(solver.eigenvectors()) > kDiagonalizableCond) {
      failures.push_back("B_" + std::to_string(k + 1) + " is not diagonalizable");
    }
    const auto& ev = params.denominator_spectra()[static_cast<size_t>(k)].eigenvalues;
    for (size_t i = 0; i < ev.size(); ++i) all.push_back({k, static_cast<int>(i), ev[i]});
  }
  for (size_t a = 0; a < all.size(); ++a) {
    for (size_t b = a + 1; b < all.size(); ++b) {
      const double scale = std::max({1.0, std::abs(all[a].beta), std::abs(all[b].beta)});
      if (std::abs(all[a].beta - all[b].beta) <= kDistinctTol * scale) {
        failures.push_back("eigenvalues beta^" + std::to_string(all[a].k + 1) + "_" +
                           std::to_string(all[a].i + 1) + " and beta^" +
                           std::to_string(all[b].k + 1) + "_" + std::to_string(all[b].i + 1) +
                           " coincide (" + fmt(all[a].beta) + ")");
      }
    }
  }
  for (const Labeled& x : all) {
    if (near_positive_integer(x.beta, kPoleTol)) {
      failures.push_back("eigenvalue " + fmt(x.beta) + " of B_" + std::to_string(x.k + 1) +
                         " lies in N (resonant exponent)");
    }
    for (const Labeled& y : all) {
      if (near_positive_integer(x.beta - y.beta, kPoleTol)) {
        failures.push_back("eigenvalue " + fmt(x.beta) + " lies in sigma(B_" +
                           std::to_string(y.k + 1) + ") + N (resonant exponent)");
      }
    }
  }
  if (!failures.empty()) {
    std::string msg = "fundamental set hypotheses failed:";
    for (const std::string& f : failures) msg += "\n  - " + f;
    throw Error(ErrorCode::HypothesisViolation, msg);
  }

  std::vector<SeriesSolution> out = analytic_basis(eq, truncation);
  for (const Labeled& x : all) {
    auto sols = nonanalytic_solution(eq, x.beta, truncation);
    for (auto& s : sols) out.push_back(std::move(s));
  }
  const int expected = eq.dim() * (params.m() + 1);
  if (static_cast<int>(out.size()) != expected) {
    throw Error(ErrorCode::HypothesisViolation,
                "constructed " + std::to_string(out.size()) + " solutions, expected " +
                    std::to_string(expected));
  }
  return out;
}

std::vector<Vector> residual_coefficients(const HypergeometricEquation& eq,
                                          const SeriesSolution& sol) {
  const auto& params = eq.params();
  if (sol.dim() != eq.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "solution dimension differs from equation dimension");
  }
  const Complex p = sol.exponent;
  const auto& f = sol.coefficients;
  std::vector<Vector> rows;
  rows.reserve(f.size());
  // j = -1: p (B_1 + p - 1) ... (B_m + p - 1) F_0
  rows.push_back(p * apply_product(params.denominator(), p - 1.0, f[0]));
  for (size_t j = 0; j + 1 < f.size(); ++j) {
    const Complex s = p + static_cast<double>(j);
    const Vector lhs = (s + 1.0) * apply_product(params.denominator(), s, f[j + 1]);
    const Vector rhs = apply_product(params.numerator(), s, f[j]);
    rows.push_back(lhs - rhs);
  }
  return rows;
}

std::vector<double> residual_scales(const HypergeometricEquation& eq, const SeriesSolution& sol) {
  const auto& params = eq.params();
  const Complex p = sol.exponent;
  const auto& f = sol.coefficients;
  std::vector<double> scales;
  scales.reserve(f.size());
  scales.push_back(std::abs(p) * product_norm_bound(params.denominator(), p - 1.0) * f[0].norm());
  for (size_t j = 0; j + 1 < f.size(); ++j) {
    const Complex s = p + static_cast<double>(j);
    scales.push_back(std::abs(s + 1.0) * product_norm_bound(params.denominator(), s) *
                         f[j + 1].norm() +
                     product_norm_bound(params.numerator(), s) * f[j].norm());
  }
  return scales;
}

bool check_recursion(const HypergeometricEquation& eq, const SeriesSolution& sol,
                     double rel_tol) {
  if (sol.truncation() < 1 || sol.dim() != eq.dim()) return false;
  const auto rows = residual_coefficients(eq, sol);
  const auto scales = residual_scales(eq, sol);
  for (size_t k = 0; k < rows.size(); ++k) {
    if (!(rows[k].norm() <= rel_tol * (1.0 + scales[k]))) return false;
  }
  return true;
}

Vector evaluate_solution(const SeriesSolution& sol, Complex z) {
  Vector acc = Vector::Zero(sol.dim());
  for (auto it = sol.coefficients.rbegin(); it != sol.coefficients.rend(); ++it) {
    acc = acc * z + *it;
  }
  return principal_power(z, sol.exponent) * acc;
}

PointwiseResidual ode_residual_at(const HypergeometricEquation& eq, const SeriesSolution& sol,
                                  Complex z) {
  const auto& params = eq.params();
  const int r = eq.dim();
  const Complex p = sol.exponent;
  const auto& f = sol.coefficients;

  // LHS operator t (t + B_1 - 1)...(t + B_m - 1); RHS operator (t + A_1)...(t + A_n)
  std::vector<DenseMatrix> lhs_poly = operator_polynomial(params.denominator(), -1.0, r);
  lhs_poly.insert(lhs_poly.begin(), DenseMatrix::Zero(r, r));
  const std::vector<DenseMatrix> rhs_poly = operator_polynomial(params.numerator(), 0.0, r);
  const size_t degree = std::max(lhs_poly.size(), rhs_poly.size());

  // g[d] = sum_j (p+j)^d F_j z^j and its absolute counterpart
  std::vector<Vector> g(degree, Vector::Zero(r));
  std::vector<double> g_abs(degree, 0.0);
  Complex zj(1.0, 0.0);
  for (size_t j = 0; j < f.size(); ++j) {
    const Complex e = p + static_cast<double>(j);
    Complex w = zj;
    for (size_t d = 0; d < degree; ++d) {
      g[d] += w * f[j];
      g_abs[d] += std::abs(w) * f[j].norm();
      w *= e;
    }
    zj *= z;
  }

  Vector lhs = Vector::Zero(r);
  Vector rhs = Vector::Zero(r);
  double scale = 0.0;
  for (size_t d = 0; d < lhs_poly.size(); ++d) {
    lhs += lhs_poly[d] * g[d];
    scale += spectral_norm(lhs_poly[d]) * g_abs[d];
  }
  for (size_t d = 0; d < rhs_poly.size(); ++d) {
    rhs += rhs_poly[d] * g[d];
    scale += std::abs(z) * spectral_norm(rhs_poly[d]) * g_abs[d];
  }
  rhs *= z;

  const double zp = std::abs(principal_power(z, p));
  PointwiseResidual out;
  out.residual = zp * (lhs - rhs).norm();
  out.scale = zp * scale;
  const size_t t = f.size();
  const Vector last = apply_product(params.numerator(), p + static_cast<double>(t - 1), f[t - 1]);
  out.tail = zp * std::pow(std::abs(z), static_cast<double>(t)) * last.norm();
  return out;
}

double sample_condition(const std::vector<SeriesSolution>& sols, const std::vector<Complex>& points) {
  if (sols.empty() || points.empty()) return std::numeric_limits<double>::infinity();
  const int r = sols.front().dim();
  if (points.size() * static_cast<size_t>(r) < sols.size()) {
    return std::numeric_limits<double>::infinity();
  }
  DenseMatrix stack(static_cast<Eigen::Index>(points.size()) * r,
                    static_cast<Eigen::Index>(sols.size()));
  for (size_t c = 0; c < sols.size(); ++c) {
    for (size_t k = 0; k < points.size(); ++k) {
      stack.block(static_cast<Eigen::Index>(k) * r, static_cast<Eigen::Index>(c), r, 1) =
          evaluate_solution(sols[c], points[k]);
    }
    const double n = stack.col(static_cast<Eigen::Index>(c)).norm();
    if (n > 0.0) stack.col(static_cast<Eigen::Index>(c)) /= n;
  }
  return condition_number(stack);
}

}  // namespace mhyp
