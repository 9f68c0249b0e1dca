#pragma once

// Matrix symbols and the nFm / shifted nFm^p series.
//
// The symbol recursion applies, for every j,
//   S_{j+1} = (B_m + j)^{-1} ... (B_1 + j)^{-1} (A_1 + j) ... (A_n + j) S_j,
// with S_0 = I. Matrix products do not commute, so this order is kept
// literally everywhere.

#include <optional>
#include <vector>

#include "mhyp/matcore.hpp"

namespace mhyp {

struct PoleRecord {
  int index = 0;          // which B_k (0-based)
  Complex eigenvalue;     // eigenvalue of B_k (+ shift) that hits the pole
  long long j = 0;        // recursion step where (B_k + shift + j) is singular
};

class HypergeometricParams {
 public:
  /// All matrices must share one dimension. `dim` is required only when both
  /// lists are empty; otherwise it must agree with the matrices (or be -1).
  HypergeometricParams(std::vector<ComplexMatrix> numerator,
                       std::vector<ComplexMatrix> denominator, int dim = -1);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return static_cast<int>(numerator_.size()); }
  int m() const noexcept { return static_cast<int>(denominator_.size()); }
  const std::vector<ComplexMatrix>& numerator() const noexcept { return numerator_; }
  const std::vector<ComplexMatrix>& denominator() const noexcept { return denominator_; }

  /// No denominator eigenvalue within kPoleTol of {0, -1, -2, ...}.
  bool admissible() const noexcept { return violations_.empty(); }
  const std::vector<PoleRecord>& violations() const noexcept { return violations_; }

  /// Cached spectra of the denominators.
  const std::vector<Spectrum>& denominator_spectra() const noexcept { return den_spectra_; }

 private:
  std::vector<ComplexMatrix> numerator_;
  std::vector<ComplexMatrix> denominator_;
  int dim_ = 0;
  std::vector<Spectrum> den_spectra_;
  std::vector<PoleRecord> violations_;
};

struct SymbolSequence {
  HypergeometricParams params;
  Complex shift;
  std::vector<ComplexMatrix> terms;  // terms[j] = (A+shift; B+shift)_j
};

struct EvaluationResult {
  ComplexMatrix value;
  int terms_used = 0;
  /// Norm of the first neglected term.
  double truncation_bound = 0.0;
  /// converged implies truncation_bound <= tol * max(1, ||value||).
  bool converged = false;
};

struct EvalOptions {
  double tol = kDefaultTol;
  int max_terms = 10000;
  /// Permit |z| == 1 for n = m + 1 (certify first; see convergence.hpp).
  bool allow_boundary = false;
};

/// First `count` symbols with all parameters shifted by `shift`.
/// Throws PoleInParameters when some B_k + shift + j is singular for
/// j < count - 1.
SymbolSequence symbol_sequence(const HypergeometricParams& params, Complex shift, int count);

/// Applies one step of the symbol recursion to `x` at index `j`:
/// (B_m+s+j)^{-1}...(B_1+s+j)^{-1}(A_1+s+j)...(A_n+s+j) x. Works for any
/// column count, so it serves matrices and vectors alike.
DenseMatrix apply_symbol_step(const HypergeometricParams& params, Complex shift, long long j,
                              const DenseMatrix& x);

/// sum_j z^j / j! (A; B)_j, truncated per the three-small-terms rule.
EvaluationResult eval_nFm(const HypergeometricParams& params, Complex z,
                          const EvalOptions& options = {});

/// sum_j z^j / (p+1)_j (A+p; B+p)_j.
EvaluationResult eval_shifted_nFm(const HypergeometricParams& params, Complex p, Complex z,
                                  const EvalOptions& options = {});

/// Sums cached symbols of `seq` with weights z^j / (shift+1)_j. Raises
/// NoConvergence if the cached terms run out before the tolerance is met.
EvaluationResult eval_from_sequence(const SymbolSequence& seq, Complex z,
                                    const EvalOptions& options = {});

/// Checks the shifted-function precondition: -p must avoid sigma(B_k) + N0
/// and N = {1, 2, ...}. Throws ShiftPoleViolation naming the set that was hit.
void check_shift_admissible(const HypergeometricParams& params, Complex p, double tol = kPoleTol);

/// z^p on the principal branch, arg z in (-pi, pi].
Complex principal_power(Complex z, Complex p);

}  // namespace mhyp
