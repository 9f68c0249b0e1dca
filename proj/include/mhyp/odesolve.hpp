#pragma once

// Frobenius solutions z^p sum_j F_j z^j of
//   D (D + B_1 - 1) ... (D + B_m - 1) F = z (D + A_1) ... (D + A_n) F,   D = z d/dz,
// and their verification in coefficient space, where D acts on z^(p+j) as
// multiplication by (p + j).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mhyp/hyperfn.hpp"

namespace mhyp {

class HypergeometricEquation {
 public:
  explicit HypergeometricEquation(HypergeometricParams params);

  const HypergeometricParams& params() const noexcept { return params_; }
  int order() const noexcept { return std::max(params_.n(), params_.m()); }
  int dim() const noexcept { return params_.dim(); }

 private:
  HypergeometricParams params_;
};

enum class SolutionKind { Analytic, NonAnalytic };

struct SeriesSolution {
  Complex exponent;
  std::vector<Vector> coefficients;  // F_0 .. F_{truncation-1}
  SolutionKind kind = SolutionKind::Analytic;
  Complex beta;  // eigenvalue that produced a non-analytic solution

  int truncation() const noexcept { return static_cast<int>(coefficients.size()); }
  int dim() const noexcept {
    return coefficients.empty() ? 0 : static_cast<int>(coefficients.front().size());
  }
};

struct IndicialRoot {
  Complex value;
  int multiplicity = 0;
};

struct IndicialRoots {
  std::vector<IndicialRoot> roots;
  int total = 0;

  /// Roots listed with repetition, zeros first.
  std::vector<Complex> expanded() const;
};

/// {0 with multiplicity r} together with 1 - beta for every eigenvalue beta of
/// every B_k. Equal values (to kPoleTol) are merged and multiplicities summed.
IndicialRoots indicial_roots(const HypergeometricEquation& eq);

/// Analytic solutions with F_0 = e_1 .. e_r and F_j = S_j e_i / j!.
std::vector<SeriesSolution> analytic_basis(const HypergeometricEquation& eq, int truncation);

/// Solution with F_0 = f0 (any vector); requires an admissible equation.
SeriesSolution analytic_solution(const HypergeometricEquation& eq, const Vector& f0,
                                 int truncation);

/// One solution per kernel vector of p (B_1+p-1)...(B_m+p-1) at p = 1 - beta.
/// Throws InvalidArgument if beta is not an eigenvalue of any B_k,
/// ResonantExponent if beta == 1, beta lies in sigma(B_k) + N or in N (the
/// shifted-series reading -p in sigma(B_k) + N0 is the same set), EmptyKernel
/// if the kernel is numerically trivial.
std::vector<SeriesSolution> nonanalytic_solution(const HypergeometricEquation& eq, Complex beta,
                                                 int truncation);

/// Analytic plus non-analytic solutions: r (m + 1) of them. Needs n == m + 1,
/// diagonalizable B_k with pairwise distinct eigenvalues across all k, and no
/// resonance. Violations raise HypothesisViolation listing every failed clause.
std::vector<SeriesSolution> fundamental_set(const HypergeometricEquation& eq, int truncation);

/// For j = -1 .. truncation-2:
///   (p+j+1)(B_1+p+j)...(B_m+p+j) F_{j+1} - (A_1+p+j)...(A_n+p+j) F_j
/// with F_{-1} = 0. Element k of the result corresponds to j = k - 1.
std::vector<Vector> residual_coefficients(const HypergeometricEquation& eq,
                                          const SeriesSolution& sol);

/// Scale matched to each residual row: the sum of norm bounds of its two sides.
std::vector<double> residual_scales(const HypergeometricEquation& eq, const SeriesSolution& sol);

/// Every residual row has norm <= rel_tol * (1 + scale of that row).
bool check_recursion(const HypergeometricEquation& eq, const SeriesSolution& sol,
                     double rel_tol);

/// Truncated solution value z^p sum_j F_j z^j (principal branch).
Vector evaluate_solution(const SeriesSolution& sol, Complex z);

struct PointwiseResidual {
  double residual = 0.0;   // || LHS - RHS || of the ODE at z
  double scale = 0.0;      // sum of norms of the contributing pieces
  double tail = 0.0;       // norm of the term left over by truncation
};

/// Evaluates both sides of the D-operator form of the ODE at z. The sums
/// D^k F(z) are formed first and the operator polynomials (with matrix
/// coefficients) applied afterwards.
PointwiseResidual ode_residual_at(const HypergeometricEquation& eq, const SeriesSolution& sol,
                                  Complex z);

/// Condition number of the stacked values of all solutions at `points`
/// (one column per solution, columns normalized to unit length).
double sample_condition(const std::vector<SeriesSolution>& sols, const std::vector<Complex>& points);

}  // namespace mhyp
