#pragma once

// Reduction of u(1-u)F'' + (C - uU)F' - VF = 0 to the two-parameter form
// z(1-z)F'' + (C - z(A+B+1))F' - ABF = 0. This needs a solvent B of
// B^2 + (I - U)B + V = 0, built as B = X diag(lambda) X^{-1} from roots of
// det Q(lambda), Q(lambda) = lambda^2 I + lambda (I - U) + V, and kernel
// vectors of Q at those roots.

#include <optional>
#include <vector>

#include "mhyp/matcore.hpp"

namespace mhyp {

struct SecondOrderEquation {
  ComplexMatrix C;
  ComplexMatrix U;
  ComplexMatrix V;

  SecondOrderEquation(ComplexMatrix c, ComplexMatrix u, ComplexMatrix v);
  int dim() const noexcept { return C.dim(); }
};

/// Coefficients of det Q(lambda), lowest degree first; 2r + 1 entries.
struct QPolynomial {
  std::vector<Complex> coefficients;
  int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  Complex operator()(Complex lambda) const;
};

enum class ReductionStatus { Reduced, NotReducible };

struct ReductionDiagnostics {
  double solvent_residual = 0.0;  // || B^2 + (I - U) B + V ||
  double sum_residual = 0.0;      // || U - (A + B + I) ||
  double product_residual = 0.0;  // || V - A B ||
  double scale = 1.0;             // 1 + ||U|| + ||V||
};

struct ReductionResult {
  ReductionStatus status = ReductionStatus::NotReducible;
  std::optional<ComplexMatrix> A;
  std::optional<ComplexMatrix> B;
  std::vector<Complex> lambda_selection;
  std::vector<Vector> kernel_vectors;  // columns of X
  ReductionDiagnostics diagnostics;
  int best_rank = 0;                    // largest rank of X seen during the search
  long long selections_tried = 0;
};

/// det Q(lambda) by evaluation at the 2r+1 roots of unity and inverse DFT.
QPolynomial det_q_polynomial(const ComplexMatrix& U, const ComplexMatrix& V);

/// Roots of the polynomial via companion-matrix eigenvalues, polished with
/// Newton steps. Throws RootFailure if the eigensolver fails or the leading
/// coefficient vanishes.
std::vector<Complex> q_roots(const QPolynomial& poly);

struct ReduceOptions {
  double tol = 1e-10;
  /// selections whose X has a larger 2-norm condition number are rejected
  double max_condition = 1e10;
  /// exhaustive search up to this dimension, seeded random restarts beyond
  int exhaustive_max_dim = 8;
  long long random_restarts = 20000;
  unsigned long long seed = 0x5eed;
};

/// Searches root selections with independent kernel vectors; pairwise
/// distinct roots are tried before selections that repeat a root.
ReductionResult reduce_to_hypergeometric(const SecondOrderEquation& eq,
                                         const ReduceOptions& options = {});

/// Residuals of (A, B) against the equation; used to build diagnostics.
ReductionDiagnostics reduction_diagnostics(const SecondOrderEquation& eq, const DenseMatrix& A,
                                           const DenseMatrix& B);

/// Coefficient-space residuals of an analytic series F = sum_j F_j u^j of the
/// second-order equation: (j+1)(C+j)F_{j+1} - (j(j-1) + jU + V)F_j.
std::vector<Vector> second_order_residuals(const SecondOrderEquation& eq,
                                           const std::vector<Vector>& coefficients);

/// The (l+1)x(l+1) example: C lower bidiagonal, U diagonal, V upper bidiagonal.
/// Requires alpha > -1, beta > -1, 0 < k < beta + 1, ell >= 1.
SecondOrderEquation spherical_example(int ell, double alpha, double beta, double k);

enum class RootBranch { Smaller, Larger };

/// Roots of the i-th diagonal quadratic lambda^2 - lambda(a+b+l+i+1) + i(a+b+i-k+1),
/// ordered by real part.
std::pair<Complex, Complex> spherical_diagonal_roots(int ell, double alpha, double beta, double k,
                                                     int i);

/// Picks one root per diagonal index (smaller real part unless `branches`
/// says otherwise), requires them pairwise distinct (CollidingEigenvalues
/// names the clashing pair) and builds X from the triangular kernels.
ReductionResult reduce_spherical_example(int ell, double alpha, double beta, double k,
                                         double tol = 1e-10,
                                         const std::vector<RootBranch>& branches = {});

const char* reduction_status_name(ReductionStatus s) noexcept;

}  // namespace mhyp
