#include "mhyp/hyperfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mhyp/convergence.hpp"

namespace mhyp {

namespace {

std::string describe_pole(const PoleRecord& p) {
  std::ostringstream os;
  os.precision(17);
  os << "B_" << (p.index + 1) << " has eigenvalue " << p.eigenvalue.real()
     << (p.eigenvalue.imag() < 0 ? "-" : "+") << std::abs(p.eigenvalue.imag())
     << "i making (B_" << (p.index + 1) << " + " << p.j << ") singular";
  return os.str();
}

// Spectrum of B_k + shift, computed from the cached spectrum of B_k.
Spectrum shifted_spectrum(const Spectrum& s, Complex shift) {
  Spectrum out = s;
  for (Complex& ev : out.eigenvalues) ev += shift;
  return out;
}

void check_radius(const HypergeometricParams& params, Complex z, bool allow_boundary) {
  const RadiusClass cls = classify_radius(params.n(), params.m());
  const double az = std::abs(z);
  std::ostringstream os;
  os.precision(17);
  switch (cls) {
    case RadiusClass::Entire:
      return;
    case RadiusClass::UnitDisk:
      if (az < 1.0 || (allow_boundary && az <= 1.0 + kDefaultTol)) return;
      os << "|z| = " << az << " outside the open unit disk for n = m + 1";
      if (!allow_boundary && std::abs(az - 1.0) <= kDefaultTol) os << " (boundary not enabled)";
      throw Error(ErrorCode::RadiusViolation, os.str());
    case RadiusClass::DivergentOutsideZero:
      if (z == Complex(0.0, 0.0)) return;
      os << "series with n = " << params.n() << " > m + 1 = " << params.m() + 1
         << " converges only at z = 0 (|z| = " << az << ")";
      throw Error(ErrorCode::RadiusViolation, os.str());
  }
}

// Shared summation for the plain and shifted series. With shift == 0 the
// weights reduce to z^j / j!, so both entry points produce identical bits.
EvaluationResult sum_series(const HypergeometricParams& params, Complex shift, Complex z,
                            const EvalOptions& opt) {
  if (!(opt.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (opt.max_terms < 1) throw Error(ErrorCode::InvalidArgument, "max_terms must be >= 1");
  check_radius(params, z, opt.allow_boundary);

  const int r = params.dim();
  if (z == Complex(0.0, 0.0)) {
    return {ComplexMatrix::identity(r), 1, 0.0, true};
  }

  DenseMatrix term = DenseMatrix::Identity(r, r);
  DenseMatrix sum = DenseMatrix::Zero(r, r);
  int small_run = 0;
  for (long long j = 0;; ++j) {
    const double scale = std::max(1.0, spectral_norm(sum));
    const double tn = spectral_norm(term);
    small_run = tn <= opt.tol * scale ? small_run + 1 : 0;
    if (small_run == 3) {
      // the third small term in a row is the first one left out
      return {ComplexMatrix(sum), static_cast<int>(j), tn, true};
    }
    sum += term;
    if (j + 1 >= opt.max_terms) {
      std::ostringstream os;
      os.precision(17);
      os << "no convergence after " << opt.max_terms << " terms (last term norm " << tn << ")";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    const Complex weight = z / (shift + static_cast<double>(j + 1));
    term = weight * apply_symbol_step(params, shift, j, term);
  }
}

}  // namespace

HypergeometricParams::HypergeometricParams(std::vector<ComplexMatrix> numerator,
                                           std::vector<ComplexMatrix> denominator, int dim)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  int seen = -1;
  for (const auto* list : {&numerator_, &denominator_}) {
    for (const ComplexMatrix& a : *list) {
      if (a.dim() == 0) throw Error(ErrorCode::InvalidMatrix, "empty parameter matrix");
      if (seen < 0) seen = a.dim();
      if (a.dim() != seen) {
        throw Error(ErrorCode::DimensionMismatch, "parameter matrices have different dimensions");
      }
    }
  }
  if (seen < 0) {
    if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "dim required when there are no parameters");
    seen = dim;
  } else if (dim > 0 && dim != seen) {
    throw Error(ErrorCode::DimensionMismatch, "declared dim disagrees with parameter matrices");
  }
  dim_ = seen;

  den_spectra_.reserve(denominator_.size());
  for (size_t k = 0; k < denominator_.size(); ++k) {
    den_spectra_.push_back(eigenvalues(denominator_[k]));
    NonpositiveIntegerHit hit;
    if (hits_nonpositive_integer(den_spectra_.back(), kPoleTol, -1, &hit)) {
      violations_.push_back({static_cast<int>(k), hit.eigenvalue, -hit.integer});
    }
  }
}

DenseMatrix apply_symbol_step(const HypergeometricParams& params, Complex shift, long long j,
                              const DenseMatrix& x) {
  const Complex s = shift + static_cast<double>(j);
  DenseMatrix y = x;
  const auto& num = params.numerator();
  for (auto it = num.rbegin(); it != num.rend(); ++it) {
    DenseMatrix a = it->mat();
    a.diagonal().array() += s;
    y = a * y;
  }
  for (const ComplexMatrix& bk : params.denominator()) {
    DenseMatrix b = bk.mat();
    b.diagonal().array() += s;
    y = b.partialPivLu().solve(y);
  }
  return y;
}

SymbolSequence symbol_sequence(const HypergeometricParams& params, Complex shift, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  const auto& spectra = params.denominator_spectra();
  for (size_t k = 0; k < spectra.size(); ++k) {
    NonpositiveIntegerHit hit;
    if (hits_nonpositive_integer(shifted_spectrum(spectra[k], shift), kPoleTol, count - 1, &hit)) {
      throw Error(ErrorCode::PoleInParameters,
                  describe_pole({static_cast<int>(k), hit.eigenvalue, -hit.integer}));
    }
  }
  SymbolSequence seq{params, shift, {}};
  seq.terms.reserve(static_cast<size_t>(count));
  seq.terms.push_back(ComplexMatrix::identity(params.dim()));
  for (int j = 0; j + 1 < count; ++j) {
    seq.terms.emplace_back(apply_symbol_step(params, shift, j, seq.terms.back().mat()));
  }
  return seq;
}

EvaluationResult eval_nFm(const HypergeometricParams& params, Complex z, const EvalOptions& options) {
  if (!params.admissible()) {
    throw Error(ErrorCode::PoleInParameters, describe_pole(params.violations().front()));
  }
  return sum_series(params, Complex(0.0, 0.0), z, options);
}

EvaluationResult eval_shifted_nFm(const HypergeometricParams& params, Complex p, Complex z,
                                  const EvalOptions& options) {
  check_shift_admissible(params, p);
  return sum_series(params, p, z, options);
}

EvaluationResult eval_from_sequence(const SymbolSequence& seq, Complex z, const EvalOptions& opt) {
  check_radius(seq.params, z, opt.allow_boundary);
  const int r = seq.params.dim();
  if (z == Complex(0.0, 0.0)) return {ComplexMatrix::identity(r), 1, 0.0, true};

  DenseMatrix sum = DenseMatrix::Zero(r, r);
  Complex weight(1.0, 0.0);
  int small_run = 0;
  const size_t limit = std::min(seq.terms.size(), static_cast<size_t>(opt.max_terms));
  for (size_t j = 0; j < limit; ++j) {
    const DenseMatrix term = weight * seq.terms[j].mat();
    const double scale = std::max(1.0, spectral_norm(sum));
    const double tn = spectral_norm(term);
    small_run = tn <= opt.tol * scale ? small_run + 1 : 0;
    if (small_run == 3) return {ComplexMatrix(sum), static_cast<int>(j), tn, true};
    sum += term;
    weight *= z / (seq.shift + static_cast<double>(j + 1));
  }
  throw Error(ErrorCode::NoConvergence, "cached symbols exhausted before reaching tolerance");
}

void check_shift_admissible(const HypergeometricParams& params, Complex p, double tol) {
  std::ostringstream os;
  os.precision(17);
  // -p in N = {1, 2, ...}
  const double nearest = std::round(-p.real());
  if (nearest >= 1.0 && std::abs(-p - Complex(nearest, 0.0)) <= tol) {
    os << "-p = " << -p.real() << " lies in N = {1, 2, ...}";
    throw Error(ErrorCode::ShiftPoleViolation, os.str());
  }
  // -p in sigma(B_k) + N0  <=>  beta + p in {0, -1, -2, ...}
  const auto& spectra = params.denominator_spectra();
  for (size_t k = 0; k < spectra.size(); ++k) {
    NonpositiveIntegerHit hit;
    if (hits_nonpositive_integer(shifted_spectrum(spectra[k], p), tol, -1, &hit)) {
      os << "-p lies in sigma(B_" << (k + 1) << ") + N0: eigenvalue "
         << (hit.eigenvalue - p).real() << std::showpos << (hit.eigenvalue - p).imag()
         << std::noshowpos << "i plus " << -hit.integer;
      throw Error(ErrorCode::ShiftPoleViolation, os.str());
    }
  }
}

Complex principal_power(Complex z, Complex p) {
  if (z == Complex(0.0, 0.0)) {
    return p == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  }
  // -0.0 imaginary parts would select arg = -pi; the branch cut belongs to +pi
  const Complex zz(z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
  return std::exp(p * std::log(zz));
}

}  // namespace mhyp
