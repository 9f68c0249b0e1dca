#pragma once

// Radius classification of the nFm series and the unit-circle certificate
// for m+1 F m. The certificate is a data outcome, never an exception.

#include <iosfwd>
#include <vector>

#include "mhyp/hyperfn.hpp"

namespace mhyp {

enum class RadiusClass { Entire, UnitDisk, DivergentOutsideZero };

/// n <= m: entire; n == m+1: unit disk; n > m+1: only z = 0.
constexpr RadiusClass classify_radius(int n, int m) noexcept {
  if (n <= m) return RadiusClass::Entire;
  if (n == m + 1) return RadiusClass::UnitDisk;
  return RadiusClass::DivergentOutsideZero;
}

const char* radius_class_name(RadiusClass c) noexcept;

enum class CertificateVerdict { Satisfied, Boundary, NotSatisfied };

const char* verdict_name(CertificateVerdict v) noexcept;

struct ConvergenceCertificate {
  bool satisfied = false;
  CertificateVerdict verdict = CertificateVerdict::NotSatisfied;
  /// (delta_sum - norm_sum) / 2
  double lambda = 0.0;
  double delta_sum = 0.0;
  double norm_sum = 0.0;
  std::vector<bool> hermitian_check;  // one per B_k
  /// true when some B_k has an eigenvalue in {0, -1, -2, ...}
  bool pole_in_denominator = false;
};

/// Requires n == m + 1 (InvalidArgument otherwise). Satisfied needs every
/// B_k Hermitian to `tol`, no B_k eigenvalue in -N0 and delta_sum > norm_sum;
/// equality within `tol * scale` is reported as Boundary.
ConvergenceCertificate unit_circle_certificate(const HypergeometricParams& params,
                                               double tol = kDefaultTol);

struct ProbeRow {
  long long j = 0;                // number of terms summed (J)
  double partial_sum_norm = 0.0;  // || sum_{i < J} term_i ||
  double term_norm = 0.0;         // || term_{J-1} ||
  double weighted_term_norm = 0.0;  // term_norm * (J-1)^(1 + lambda')
};

struct BoundaryProbe {
  std::vector<ProbeRow> rows;
  DenseMatrix final_sum;
};

inline constexpr long long kProbeTermCap = 1000000;

/// Partial-sum trace of the series at a point of the unit circle. Every
/// `stride`-th row is kept (the last row always is). max_terms is capped at
/// kProbeTermCap.
BoundaryProbe boundary_probe(const HypergeometricParams& params, Complex z_on_circle,
                             long long max_terms, double lambda_prime = 0.0,
                             long long stride = 1);

/// max over J in (j0, j0 + window] of || S_J - S_j0 ||, where S_J is the sum of
/// the first J series terms. Uses the same term recursion as the evaluator.
double cauchy_tail(const HypergeometricParams& params, Complex z, long long j0,
                   long long window);

/// Ratios ||term_{j+1}|| / ||term_j|| for j = 0 .. count-1 (term_j includes
/// z^j / j!). No radius restriction: this is the diagnostic behind the
/// classification.
std::vector<double> term_ratios(const HypergeometricParams& params, Complex z, int count);

/// CSV with header "J,partial_sum_norm,term_norm,weighted_term_norm".
void write_probe_csv(std::ostream& os, const BoundaryProbe& probe);

}  // namespace mhyp
