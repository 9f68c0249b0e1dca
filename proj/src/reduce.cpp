#include "mhyp/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace mhyp {

namespace {

// relative kernel cutoff for Q(lambda) at a computed root
constexpr double kQKernelTol = 1e-7;
// roots this close (relative) are treated as one value for the
// distinct-first search order
constexpr double kRootClusterTol = 1e-6;

// size of the terms of Q(lambda) before cancellation
double q_scale(const DenseMatrix& U, const DenseMatrix& V, Complex lambda) {
  const auto r = U.rows();
  const double l = std::abs(lambda);
  return l * l + l * spectral_norm(DenseMatrix(DenseMatrix::Identity(r, r) - U)) + spectral_norm(V);
}

DenseMatrix q_matrix(const DenseMatrix& U, const DenseMatrix& V, Complex lambda) {
  const auto r = U.rows();
  DenseMatrix q = V;
  q.noalias() += lambda * (DenseMatrix::Identity(r, r) - U);
  q.diagonal().array() += lambda * lambda;
  return q;
}

struct Candidate {
  int cluster = 0;
  Complex lambda;
  Vector v;
};

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Roots of det Q via the first companion linearization [[0, I], [-V, U - I]].
std::vector<Complex> linearization_roots(const DenseMatrix& U, const DenseMatrix& V) {
  const auto r = U.rows();
  DenseMatrix L = DenseMatrix::Zero(2 * r, 2 * r);
  L.topRightCorner(r, r) = DenseMatrix::Identity(r, r);
  L.bottomLeftCorner(r, r) = -V;
  L.bottomRightCorner(r, r) = U - DenseMatrix::Identity(r, r);
  Eigen::ComplexEigenSolver<DenseMatrix> solver(L, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::RootFailure, "eigensolver failed on the quadratic linearization");
  }
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

std::vector<Candidate> build_candidates(const DenseMatrix& U, const DenseMatrix& V,
                                        const std::vector<Complex>& roots) {
  std::vector<int> cluster(roots.size(), -1);
  int next_cluster = 0;
  for (size_t a = 0; a < roots.size(); ++a) {
    if (cluster[a] >= 0) continue;
    cluster[a] = next_cluster;
    for (size_t b = a + 1; b < roots.size(); ++b) {
      const double scale = std::max({1.0, std::abs(roots[a]), std::abs(roots[b])});
      if (cluster[b] < 0 && std::abs(roots[a] - roots[b]) <= kRootClusterTol * scale) {
        cluster[b] = next_cluster;
      }
    }
    ++next_cluster;
  }
  std::vector<Candidate> out;
  for (size_t a = 0; a < roots.size(); ++a) {
    for (Vector& v : kernel_basis(q_matrix(U, V, roots[a]), kQKernelTol, q_scale(U, V, roots[a]))) {
      out.push_back({cluster[a], roots[a], std::move(v)});
    }
  }
  return out;
}

struct Attempt {
  bool ok = false;
  int rank = 0;
  ReductionResult result;
};

Attempt try_selection(const SecondOrderEquation& eq, const std::vector<Candidate>& cands,
                      const std::vector<int>& pick, const ReduceOptions& opt) {
  const int r = eq.dim();
  DenseMatrix X(r, r);
  Eigen::VectorXcd lam(r);
  for (int c = 0; c < r; ++c) {
    X.col(c) = cands[static_cast<size_t>(pick[static_cast<size_t>(c)])].v;
    lam(c) = cands[static_cast<size_t>(pick[static_cast<size_t>(c)])].lambda;
  }
  Attempt at;
  at.rank = numerical_rank(X, 1.0 / opt.max_condition);
  if (condition_number(X) > opt.max_condition) return at;

  // B = X diag(lam) X^{-1}, solved as X^T B^T = (X diag(lam))^T
  const Eigen::PartialPivLU<DenseMatrix> lu(X.transpose());
  const DenseMatrix XL = X * lam.asDiagonal();
  const DenseMatrix B = lu.solve(XL.transpose()).transpose();
  const DenseMatrix A = eq.U.mat() - B - DenseMatrix::Identity(r, r);
  const ReductionDiagnostics diag = reduction_diagnostics(eq, A, B);
  const double bound = opt.tol * diag.scale;
  if (!(diag.solvent_residual <= bound && diag.sum_residual <= bound &&
        diag.product_residual <= bound)) {
    return at;
  }
  at.ok = true;
  at.result.status = ReductionStatus::Reduced;
  at.result.A = ComplexMatrix(A);
  at.result.B = ComplexMatrix(B);
  for (int c = 0; c < r; ++c) {
    at.result.lambda_selection.push_back(lam(c));
    at.result.kernel_vectors.emplace_back(X.col(c));
  }
  at.result.diagnostics = diag;
  return at;
}

bool distinct_clusters(const std::vector<Candidate>& cands, const std::vector<int>& pick) {
  for (size_t a = 0; a < pick.size(); ++a)
    for (size_t b = a + 1; b < pick.size(); ++b)
      if (cands[static_cast<size_t>(pick[a])].cluster == cands[static_cast<size_t>(pick[b])].cluster)
        return false;
  return true;
}

// Advances `pick` to the next r-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& pick, int n) {
  const int r = static_cast<int>(pick.size());
  int i = r - 1;
  while (i >= 0 && pick[static_cast<size_t>(i)] == n - r + i) --i;
  if (i < 0) return false;
  ++pick[static_cast<size_t>(i)];
  for (int k = i + 1; k < r; ++k) pick[static_cast<size_t>(k)] = pick[static_cast<size_t>(k - 1)] + 1;
  return true;
}

void validate_example(int ell, double alpha, double beta, double k) {
  std::ostringstream os;
  if (ell < 1) os << "ell must be >= 1 (got " << ell << "); ";
  if (!(alpha > -1.0)) os << "alpha must exceed -1; ";
  if (!(beta > -1.0)) os << "beta must exceed -1; ";
  if (!(k > 0.0 && k < beta + 1.0)) os << "k must satisfy 0 < k < beta + 1; ";
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(k)) os << "non-finite input; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw Error(ErrorCode::InvalidExampleParameters, msg.substr(0, msg.size() - 2));
}

}  // namespace

SecondOrderEquation::SecondOrderEquation(ComplexMatrix c, ComplexMatrix u, ComplexMatrix v)
    : C(std::move(c)), U(std::move(u)), V(std::move(v)) {
  if (C.dim() != U.dim() || C.dim() != V.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "C, U and V must share one dimension");
  }
}

Complex QPolynomial::operator()(Complex lambda) const {
  Complex acc(0.0, 0.0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

QPolynomial det_q_polynomial(const ComplexMatrix& U, const ComplexMatrix& V) {
  if (U.dim() != V.dim()) throw Error(ErrorCode::DimensionMismatch, "U and V differ in dimension");
  const int npts = 2 * U.dim() + 1;
  std::vector<Complex> nodes(static_cast<size_t>(npts));
  std::vector<Complex> values(static_cast<size_t>(npts));
  for (int k = 0; k < npts; ++k) {
    nodes[static_cast<size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / npts);
    values[static_cast<size_t>(k)] =
        q_matrix(U.mat(), V.mat(), nodes[static_cast<size_t>(k)]).partialPivLu().determinant();
  }
  QPolynomial poly;
  poly.coefficients.assign(static_cast<size_t>(npts), Complex(0.0, 0.0));
  for (int d = 0; d < npts; ++d) {
    Complex acc(0.0, 0.0);
    for (int k = 0; k < npts; ++k) {
      // omega_k^{-d} = omega_{(k*d) mod npts}^{-1}; indexing keeps the angle exact
      acc += values[static_cast<size_t>(k)] * std::conj(nodes[static_cast<size_t>((k * d) % npts)]);
    }
    poly.coefficients[static_cast<size_t>(d)] = acc / static_cast<double>(npts);
  }
  return poly;
}

std::vector<Complex> q_roots(const QPolynomial& poly) {
  const int deg = poly.degree();
  if (deg < 1) throw Error(ErrorCode::RootFailure, "polynomial has no roots");
  const Complex lead = poly.coefficients.back();
  double cmax = 0.0;
  for (const Complex& c : poly.coefficients) cmax = std::max(cmax, std::abs(c));
  if (std::abs(lead) <= 1e-14 * cmax) throw Error(ErrorCode::RootFailure, "leading coefficient vanishes");

  DenseMatrix companion = DenseMatrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -poly.coefficients[static_cast<size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<DenseMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::RootFailure, "companion eigensolver failed");

  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + deg);
  // derivative coefficients for polishing
  std::vector<Complex> dcoef;
  for (int i = 1; i <= deg; ++i) dcoef.push_back(static_cast<double>(i) * poly.coefficients[static_cast<size_t>(i)]);
  const QPolynomial deriv{dcoef};
  for (Complex& x : roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex fx = poly(x);
      const Complex dx = deriv(x);
      if (dx == Complex(0.0, 0.0)) break;
      const Complex cand = x - fx / dx;
      if (!(std::abs(poly(cand)) < std::abs(fx))) break;
      x = cand;
    }
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

ReductionDiagnostics reduction_diagnostics(const SecondOrderEquation& eq, const DenseMatrix& A,
                                           const DenseMatrix& B) {
  const auto r = B.rows();
  const DenseMatrix I = DenseMatrix::Identity(r, r);
  const DenseMatrix& U = eq.U.mat();
  const DenseMatrix& V = eq.V.mat();
  ReductionDiagnostics d;
  d.solvent_residual = spectral_norm(DenseMatrix(B * B + (I - U) * B + V));
  d.sum_residual = spectral_norm(DenseMatrix(U - (A + B + I)));
  d.product_residual = spectral_norm(DenseMatrix(V - A * B));
  d.scale = 1.0 + spectral_norm(U) + spectral_norm(V);
  return d;
}

ReductionResult reduce_to_hypergeometric(const SecondOrderEquation& eq, const ReduceOptions& opt) {
  const int r = eq.dim();
  const std::vector<Complex> roots = linearization_roots(eq.U.mat(), eq.V.mat());
  const std::vector<Candidate> cands = build_candidates(eq.U.mat(), eq.V.mat(), roots);
  const int nc = static_cast<int>(cands.size());

  ReductionResult fail;
  fail.status = ReductionStatus::NotReducible;
  if (nc < r) {
    // still report the best rank reachable with every candidate column
    if (nc > 0) {
      DenseMatrix X(r, nc);
      for (int c = 0; c < nc; ++c) X.col(c) = cands[static_cast<size_t>(c)].v;
      fail.best_rank = numerical_rank(X, 1.0 / opt.max_condition);
    }
    return fail;
  }

  long long tried = 0;
  auto consider = [&](const std::vector<int>& pick) -> std::optional<ReductionResult> {
    ++tried;
    Attempt at = try_selection(eq, cands, pick, opt);
    fail.best_rank = std::max(fail.best_rank, at.rank);
    if (at.ok) {
      at.result.best_rank = r;
      at.result.selections_tried = tried;
      return std::move(at.result);
    }
    return std::nullopt;
  };

  if (r <= opt.exhaustive_max_dim) {
    for (int phase = 0; phase < 2; ++phase) {
      std::vector<int> pick(static_cast<size_t>(r));
      for (int i = 0; i < r; ++i) pick[static_cast<size_t>(i)] = i;
      do {
        const bool distinct = distinct_clusters(cands, pick);
        if ((phase == 0) != distinct) continue;
        if (auto res = consider(pick)) return *res;
      } while (next_combination(pick, nc));
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::vector<int> all(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) all[static_cast<size_t>(i)] = i;
    for (long long t = 0; t < opt.random_restarts; ++t) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> pick(all.begin(), all.begin() + r);
      std::sort(pick.begin(), pick.end());
      // first half of the budget keeps to distinct roots
      if (t < opt.random_restarts / 2 && !distinct_clusters(cands, pick)) continue;
      if (auto res = consider(pick)) return *res;
    }
  }
  fail.selections_tried = tried;
  return fail;
}

std::vector<Vector> second_order_residuals(const SecondOrderEquation& eq,
                                           const std::vector<Vector>& f) {
  std::vector<Vector> out;
  for (size_t j = 0; j + 1 < f.size(); ++j) {
    const double jd = static_cast<double>(j);
    DenseMatrix lhs = eq.C.mat();
    lhs.diagonal().array() += jd;
    DenseMatrix rhs = jd * eq.U.mat() + eq.V.mat();
    rhs.diagonal().array() += jd * (jd - 1.0);
    out.push_back((jd + 1.0) * (lhs * f[j + 1]) - rhs * f[j]);
  }
  return out;
}

SecondOrderEquation spherical_example(int ell, double alpha, double beta, double k) {
  validate_example(ell, alpha, beta, k);
  const int n = ell + 1;
  DenseMatrix C = DenseMatrix::Zero(n, n);
  DenseMatrix U = DenseMatrix::Zero(n, n);
  DenseMatrix V = DenseMatrix::Zero(n, n);
  for (int i = 0; i <= ell; ++i) {
    C(i, i) = beta + 1.0 + 2.0 * i;
    U(i, i) = alpha + beta + ell + i + 2.0;
    V(i, i) = i * (alpha + beta + i - k + 1.0);
  }
  for (int i = 1; i <= ell; ++i) C(i, i - 1) = static_cast<double>(i);
  for (int i = 0; i <= ell - 1; ++i) V(i, i + 1) = -(ell - i) * (i + beta - k + 1.0);
  return SecondOrderEquation(ComplexMatrix(C), ComplexMatrix(U), ComplexMatrix(V));
}

std::pair<Complex, Complex> spherical_diagonal_roots(int ell, double alpha, double beta, double k,
                                                     int i) {
  // lambda^2 + b lambda + c
  const Complex b = -(alpha + beta + ell + i + 1.0);
  const Complex c = i * (alpha + beta + i - k + 1.0);
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  const Complex q = -0.5 * (b + (b.real() >= 0.0 ? disc : -disc));
  Complex r1 = q;
  Complex r2 = q == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : c / q;
  if (lex_less(r2, r1)) std::swap(r1, r2);
  return {r1, r2};
}

ReductionResult reduce_spherical_example(int ell, double alpha, double beta, double k, double tol,
                                         const std::vector<RootBranch>& branches) {
  const SecondOrderEquation eq = spherical_example(ell, alpha, beta, k);
  const int n = ell + 1;
  if (!branches.empty() && static_cast<int>(branches.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "need one root branch per diagonal index");
  }
  std::vector<Complex> lam(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto [lo, hi] = spherical_diagonal_roots(ell, alpha, beta, k, i);
    const bool larger = !branches.empty() && branches[static_cast<size_t>(i)] == RootBranch::Larger;
    lam[static_cast<size_t>(i)] = larger ? hi : lo;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex a = lam[static_cast<size_t>(i)];
      const Complex b = lam[static_cast<size_t>(j)];
      if (std::abs(a - b) <= kPoleTol * std::max({1.0, std::abs(a), std::abs(b)})) {
        std::ostringstream os;
        os.precision(17);
        os << "selected roots collide at indices (" << i << ", " << j << "): " << a.real()
           << " vs " << b.real();
        throw Error(ErrorCode::CollidingEigenvalues, os.str());
      }
    }
  }

  // Q(lambda_i) is upper triangular with a zero in diagonal slot i; take
  // v_i[i] = 1, v_i[t] = 0 for t > i and back-substitute above.
  const DenseMatrix& U = eq.U.mat();
  const DenseMatrix& V = eq.V.mat();
  DenseMatrix X = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const DenseMatrix q = q_matrix(U, V, lam[static_cast<size_t>(i)]);
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    bool ok = true;
    for (int t = i - 1; t >= 0; --t) {
      Complex acc(0.0, 0.0);
      for (int s = t + 1; s <= i; ++s) acc += q(t, s) * v(s);
      if (std::abs(q(t, t)) <= kPoleTol * std::max(1.0, std::abs(acc))) {
        ok = false;
        break;
      }
      v(t) = -acc / q(t, t);
    }
    if (!ok) {
      // lambda_i also annihilates an earlier diagonal entry: fall back to the
      // numerical kernel and keep the vector with the largest i-th component
      const auto basis = kernel_basis(q, kQKernelTol, q_scale(U, V, lam[static_cast<size_t>(i)]));
      if (basis.empty()) throw Error(ErrorCode::RootFailure, "Q(lambda_i) has trivial kernel");
      v = *std::max_element(basis.begin(), basis.end(),
                            [i](const Vector& a, const Vector& b) { return std::abs(a(i)) < std::abs(b(i)); });
    }
    X.col(i) = v;
  }

  ReductionResult out;
  const Eigen::VectorXcd lv = Eigen::Map<const Eigen::VectorXcd>(lam.data(), n);
  const Eigen::PartialPivLU<DenseMatrix> lu(X.transpose());
  const DenseMatrix XL = X * lv.asDiagonal();
  const DenseMatrix B = lu.solve(XL.transpose()).transpose();
  const DenseMatrix A = U - B - DenseMatrix::Identity(n, n);
  out.diagnostics = reduction_diagnostics(eq, A, B);
  out.lambda_selection = lam;
  for (int i = 0; i < n; ++i) out.kernel_vectors.emplace_back(X.col(i));
  out.best_rank = numerical_rank(X, 1e-10);
  out.selections_tried = 1;
  const double bound = tol * out.diagnostics.scale;
  if (out.diagnostics.solvent_residual <= bound && out.diagnostics.sum_residual <= bound &&
      out.diagnostics.product_residual <= bound) {
    out.status = ReductionStatus::Reduced;
    out.A = ComplexMatrix(A);
    out.B = ComplexMatrix(B);
  }
  return out;
}

const char* reduction_status_name(ReductionStatus s) noexcept {
  return s == ReductionStatus::Reduced ? "Reduced" : "NotReducible";
}

}  // namespace mhyp
