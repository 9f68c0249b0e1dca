#pragma once

#include <complex>
#include <initializer_list>
#include <random>
#include <vector>

#include "mhyp/hyperfn.hpp"
#include "mhyp/matcore.hpp"

namespace th {

using mhyp::Complex;
using mhyp::ComplexMatrix;
using mhyp::DenseMatrix;
using mhyp::HypergeometricParams;

inline ComplexMatrix scalar(Complex c) { return ComplexMatrix::diagonal({c}); }

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  return ComplexMatrix::diagonal(std::vector<Complex>(d));
}

inline ComplexMatrix rows(int dim, std::initializer_list<Complex> e) {
  return ComplexMatrix::from_rows(dim, std::vector<Complex>(e));
}

inline HypergeometricParams scalar_params(std::initializer_list<Complex> a,
                                          std::initializer_list<Complex> b) {
  std::vector<ComplexMatrix> num, den;
  for (Complex x : a) num.push_back(scalar(x));
  for (Complex x : b) den.push_back(scalar(x));
  return HypergeometricParams(num, den, 1);
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline DenseMatrix random_complex(int r, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DenseMatrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

// X diag(eig) X^{-1} with X a mild perturbation of the identity.
inline DenseMatrix with_spectrum(const std::vector<Complex>& eig, std::mt19937_64& rng,
                                 double spread = 0.3) {
  const int r = static_cast<int>(eig.size());
  DenseMatrix x = DenseMatrix::Identity(r, r) + random_complex(r, rng, spread);
  DenseMatrix d = DenseMatrix::Zero(r, r);
  for (int i = 0; i < r; ++i) d(i, i) = eig[static_cast<size_t>(i)];
  return x * d * x.inverse();
}

}  // namespace th
