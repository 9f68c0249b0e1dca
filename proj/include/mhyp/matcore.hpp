#pragma once

// Dense complex linear algebra used throughout the library. Everything is
// double precision; rank and kernel decisions go through singular values.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mhyp/error.hpp"

namespace mhyp {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-12;
// smallest singular value at or below this fraction of the norm is "singular"
inline constexpr double kSingularThreshold = 1e-10;
// absolute distance used for "eigenvalue sits on a forbidden integer"
inline constexpr double kPoleTol = 1e-9;

/// Square, finite r x r complex matrix. Construction validates both
/// properties and throws Error{InvalidMatrix} otherwise.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(DenseMatrix m);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);
  /// Row-major entries; size must be dim * dim.
  static ComplexMatrix from_rows(int dim, const std::vector<Complex>& entries);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const DenseMatrix& mat() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// this + s * I
  ComplexMatrix shifted(Complex s) const;

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  DenseMatrix m_;
};

struct Spectrum {
  std::vector<Complex> eigenvalues;
  int source_dim = 0;
};

struct RhoDelta {
  double rho = 0.0;
  double delta = 0.0;
};

double spectral_norm(const ComplexMatrix& a);
double spectral_norm(const DenseMatrix& a);

Spectrum eigenvalues(const ComplexMatrix& a);
RhoDelta rho_delta(const ComplexMatrix& a);

/// Orthonormal basis of the numerical null space: right singular vectors
/// whose singular value is <= tol * max(||a||, scale). May be empty.
/// `scale` is the magnitude of the terms that cancelled to form `a`; without
/// it a matrix that is zero up to rounding has no null space.
std::vector<Vector> kernel_basis(const ComplexMatrix& a, double tol = kDefaultTol,
                                 double scale = 0.0);
std::vector<Vector> kernel_basis(const DenseMatrix& a, double tol = kDefaultTol,
                                 double scale = 0.0);

/// Throws SingularMatrix when sigma_min <= kSingularThreshold * ||a||.
ComplexMatrix inverse(const ComplexMatrix& a);

double smallest_singular_value(const DenseMatrix& a);
/// 2-norm condition number; infinity for singular input.
double condition_number(const DenseMatrix& a);
int numerical_rank(const DenseMatrix& a, double tol);

/// Rising factorial w (w+1) ... (w+j-1); (w)_0 = 1.
Complex pochhammer(Complex w, std::uint64_t j);

/// True when some eigenvalue of `a` is within `tol` of {0, -1, ..., -(count-1)}
/// (count < 0 means all nonpositive integers). Reports the first hit.
struct NonpositiveIntegerHit {
  Complex eigenvalue;
  long long integer = 0;
};
bool hits_nonpositive_integer(const Spectrum& spectrum, double tol, long long count,
                              NonpositiveIntegerHit* hit = nullptr);

bool is_finite(const DenseMatrix& m);

}  // namespace mhyp
