#include "mhyp/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mhyp {

bool is_finite(const DenseMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

ComplexMatrix::ComplexMatrix(DenseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    std::ostringstream os;
    os << "matrix must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
    throw Error(ErrorCode::InvalidMatrix, os.str());
  }
  if (!is_finite(m_)) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  return ComplexMatrix(DenseMatrix::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zero(int dim) {
  return ComplexMatrix(DenseMatrix::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  const auto r = static_cast<Eigen::Index>(entries.size());
  DenseMatrix m = DenseMatrix::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_rows(int dim, const std::vector<Complex>& entries) {
  if (dim <= 0 || entries.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim)) {
    throw Error(ErrorCode::InvalidMatrix, "entry count does not match dim*dim");
  }
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = entries[static_cast<size_t>(i * dim + j)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::shifted(Complex s) const {
  DenseMatrix m = m_;
  m.diagonal().array() += s;
  return ComplexMatrix(std::move(m));
}

double spectral_norm(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const ComplexMatrix& a) { return spectral_norm(a.mat()); }

Spectrum eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<DenseMatrix> solver(a.mat(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "complex Schur iteration did not converge");
  }
  Spectrum s;
  s.source_dim = a.dim();
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return s;
}

RhoDelta rho_delta(const ComplexMatrix& a) {
  const Spectrum s = eigenvalues(a);
  RhoDelta rd{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const Complex& ev : s.eigenvalues) {
    rd.rho = std::max(rd.rho, ev.real());
    rd.delta = std::min(rd.delta, ev.real());
  }
  return rd;
}

std::vector<Vector> kernel_basis(const DenseMatrix& a, double tol, double scale) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel tolerance must be positive");
  if (!is_finite(a)) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
  Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double norm = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = tol * std::max(norm, scale);
  std::vector<Vector> basis;
  const Eigen::Index cols = a.cols();
  for (Eigen::Index k = 0; k < cols; ++k) {
    // columns beyond the number of singular values (wide input) are null directions
    const double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= cutoff) basis.emplace_back(svd.matrixV().col(k));
  }
  return basis;
}

std::vector<Vector> kernel_basis(const ComplexMatrix& a, double tol, double scale) {
  return kernel_basis(a.mat(), tol, scale);
}

double smallest_singular_value(const DenseMatrix& a) {
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
}

double condition_number(const DenseMatrix& a) {
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  const double lo = sv(sv.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / lo;
}

int numerical_rank(const DenseMatrix& a, double tol) {
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol * sv(0)) ++rank;
  return rank;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  Eigen::JacobiSVD<DenseMatrix> svd(a.mat(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double hi = sv(0);
  const double lo = sv(sv.size() - 1);
  if (lo <= kSingularThreshold * hi) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is numerically singular (smallest singular value " << lo << ", norm " << hi
       << ")";
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  return ComplexMatrix(a.mat().partialPivLu().inverse());
}

Complex pochhammer(Complex w, std::uint64_t j) {
  Complex acc(1.0, 0.0);
  for (std::uint64_t t = 0; t < j; ++t) acc *= w + static_cast<double>(t);
  return acc;
}

bool hits_nonpositive_integer(const Spectrum& spectrum, double tol, long long count,
                              NonpositiveIntegerHit* hit) {
  for (const Complex& ev : spectrum.eigenvalues) {
    const double nearest = std::round(ev.real());
    if (nearest > 0.0) continue;
    if (count >= 0 && -nearest > static_cast<double>(count - 1)) continue;
    if (std::abs(ev - Complex(nearest, 0.0)) <= tol) {
      if (hit) *hit = {ev, static_cast<long long>(nearest)};
      return true;
    }
  }
  return false;
}

}  // namespace mhyp
