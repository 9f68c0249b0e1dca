#include "mhyp/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace mhyp {

const char* radius_class_name(RadiusClass c) noexcept {
  switch (c) {
    case RadiusClass::Entire: return "Entire";
    case RadiusClass::UnitDisk: return "UnitDisk";
    case RadiusClass::DivergentOutsideZero: return "DivergentOutsideZero";
  }
  return "Unknown";
}

const char* verdict_name(CertificateVerdict v) noexcept {
  switch (v) {
    case CertificateVerdict::Satisfied: return "Satisfied";
    case CertificateVerdict::Boundary: return "Boundary";
    case CertificateVerdict::NotSatisfied: return "NotSatisfied";
  }
  return "Unknown";
}

ConvergenceCertificate unit_circle_certificate(const HypergeometricParams& params, double tol) {
  if (params.n() != params.m() + 1) {
    throw Error(ErrorCode::InvalidArgument, "unit-circle certificate needs n = m + 1");
  }
  ConvergenceCertificate cert;
  bool all_hermitian = true;
  for (size_t k = 0; k < params.denominator().size(); ++k) {
    const DenseMatrix& b = params.denominator()[k].mat();
    const double skew = spectral_norm(DenseMatrix(b - b.adjoint()));
    const bool herm = skew <= tol * std::max(spectral_norm(b), 1e-300);
    cert.hermitian_check.push_back(herm);
    all_hermitian = all_hermitian && herm;
    cert.delta_sum += rho_delta(params.denominator()[k]).delta;
  }
  cert.pole_in_denominator = !params.admissible();
  for (const ComplexMatrix& a : params.numerator()) cert.norm_sum += spectral_norm(a);
  cert.lambda = 0.5 * (cert.delta_sum - cert.norm_sum);

  const double scale = std::max({1.0, std::abs(cert.delta_sum), cert.norm_sum});
  const double gap = cert.delta_sum - cert.norm_sum;
  const bool structural = all_hermitian && !cert.pole_in_denominator;
  if (structural && std::abs(gap) <= tol * scale) {
    cert.verdict = CertificateVerdict::Boundary;
  } else if (structural && gap > 0.0) {
    cert.verdict = CertificateVerdict::Satisfied;
  } else {
    cert.verdict = CertificateVerdict::NotSatisfied;
  }
  cert.satisfied = cert.verdict == CertificateVerdict::Satisfied;
  return cert;
}

namespace {

void check_probe_args(const HypergeometricParams& params, Complex z) {
  if (params.n() != params.m() + 1) {
    throw Error(ErrorCode::InvalidArgument, "boundary probe needs n = m + 1");
  }
  if (std::abs(std::abs(z) - 1.0) > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "boundary probe needs |z| = 1, got " << std::abs(z);
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!params.admissible()) {
    const PoleRecord& v = params.violations().front();
    std::ostringstream os;
    os << "B_" << v.index + 1 << " has an eigenvalue in {0, -1, -2, ...}";
    throw Error(ErrorCode::PoleInParameters, os.str());
  }
}

}  // namespace

BoundaryProbe boundary_probe(const HypergeometricParams& params, Complex z, long long max_terms,
                             double lambda_prime, long long stride) {
  check_probe_args(params, z);
  if (max_terms < 1) throw Error(ErrorCode::InvalidArgument, "max_terms must be >= 1");
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  max_terms = std::min(max_terms, kProbeTermCap);

  const int r = params.dim();
  DenseMatrix term = DenseMatrix::Identity(r, r);
  DenseMatrix sum = DenseMatrix::Zero(r, r);
  BoundaryProbe probe;
  for (long long j = 0; j < max_terms; ++j) {
    sum += term;
    const long long count = j + 1;
    if (count % stride == 0 || count == max_terms) {
      const double tn = spectral_norm(term);
      const double weight = j == 0 ? 0.0 : std::pow(static_cast<double>(j), 1.0 + lambda_prime);
      probe.rows.push_back({count, spectral_norm(sum), tn, tn * weight});
    }
    if (count < max_terms) {
      term = (z / static_cast<double>(j + 1)) * apply_symbol_step(params, Complex(0.0, 0.0), j, term);
    }
  }
  probe.final_sum = sum;
  return probe;
}

double cauchy_tail(const HypergeometricParams& params, Complex z, long long j0, long long window) {
  check_probe_args(params, z);
  if (j0 < 0 || window < 1 || j0 + window > kProbeTermCap) {
    throw Error(ErrorCode::InvalidArgument, "cauchy window outside [0, term cap]");
  }
  const int r = params.dim();
  DenseMatrix term = DenseMatrix::Identity(r, r);
  DenseMatrix sum = DenseMatrix::Zero(r, r);
  DenseMatrix anchor;
  double worst = 0.0;
  for (long long j = 0; j < j0 + window; ++j) {
    if (j == j0) anchor = sum;
    sum += term;
    if (j >= j0) worst = std::max(worst, spectral_norm(DenseMatrix(sum - anchor)));
    term = (z / static_cast<double>(j + 1)) * apply_symbol_step(params, Complex(0.0, 0.0), j, term);
  }
  return worst;
}

std::vector<double> term_ratios(const HypergeometricParams& params, Complex z, int count) {
  if (!params.admissible()) {
    throw Error(ErrorCode::PoleInParameters, "denominator eigenvalue in {0, -1, -2, ...}");
  }
  const int r = params.dim();
  DenseMatrix term = DenseMatrix::Identity(r, r);
  std::vector<double> ratios;
  ratios.reserve(static_cast<size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) {
    // term is kept at unit norm so large-j growth cannot overflow
    const DenseMatrix next =
        (z / static_cast<double>(j + 1)) * apply_symbol_step(params, Complex(0.0, 0.0), j, term);
    const double ratio = spectral_norm(next);
    ratios.push_back(ratio);
    if (ratio == 0.0) break;
    term = next / ratio;
  }
  return ratios;
}

void write_probe_csv(std::ostream& os, const BoundaryProbe& probe) {
  const auto old = os.precision(17);
  os << "J,partial_sum_norm,term_norm,weighted_term_norm\n";
  for (const ProbeRow& row : probe.rows) {
    os << row.j << ',' << row.partial_sum_norm << ',' << row.term_norm << ','
       << row.weighted_term_norm << '\n';
  }
  os.precision(old);
}

}  // namespace mhyp
