#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mhyp/odesolve.hpp"

using namespace mhyp;
using th::diag;
using th::scalar_params;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

void check_roots(const std::vector<Complex>& got, std::vector<Complex> want) {
  const auto g = sorted(got);
  want = sorted(want);
  REQUIRE(g.size() == want.size());
  for (size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - want[i]) < 1e-12);
}

HypergeometricEquation generic_r2() {
  std::mt19937_64 rng(21);
  const ComplexMatrix a1(th::random_complex(2, rng, 0.8));
  const ComplexMatrix a2(th::random_complex(2, rng, 0.8));
  const ComplexMatrix b1(th::with_spectrum({1.0 / 3.0, 2.0 / 3.0}, rng));
  return HypergeometricEquation(HypergeometricParams({a1, a2}, {b1}));
}

}  // namespace

TEST_SUITE("odesolve") {

TEST_CASE("equation needs a nonzero order") {
  CHECK(code_of([] { HypergeometricEquation(HypergeometricParams({}, {}, 2)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("indicial roots") {
  const HypergeometricParams p({diag({1, 1}), diag({1, 1})}, {diag({0.5, 1.5})});
  const auto roots = indicial_roots(HypergeometricEquation(p));
  CHECK(roots.total == 4);
  check_roots(roots.expanded(), {0, 0, 0.5, -0.5});

  check_roots(indicial_roots(HypergeometricEquation(scalar_params({1, 1}, {0.25}))).expanded(),
              {0, 0.75});

  const HypergeometricParams none({diag({1, 2, 3})}, {});
  const auto z = indicial_roots(HypergeometricEquation(none));
  CHECK(z.total == 3);
  REQUIRE(z.roots.size() == 1);
  CHECK(z.roots[0].multiplicity == 3);
}

TEST_CASE("analytic basis starts at the unit vectors") {
  const auto eq = generic_r2();
  const auto basis = analytic_basis(eq, 20);
  REQUIRE(basis.size() == 2);
  for (int j = 0; j < 2; ++j) {
    const Vector v = evaluate_solution(basis[static_cast<size_t>(j)], 0.0);
    CHECK(std::abs(v(j) - 1.0) < 1e-15);
    CHECK(std::abs(v(1 - j)) < 1e-15);
    CHECK(basis[static_cast<size_t>(j)].exponent == Complex(0.0));
    CHECK(basis[static_cast<size_t>(j)].kind == SolutionKind::Analytic);
  }
}

TEST_CASE("analytic coefficients of 2F1(1,1;2)") {
  const auto sol = analytic_basis(HypergeometricEquation(scalar_params({1, 1}, {2})), 12)[0];
  for (int j = 0; j < 12; ++j) {
    CHECK(std::abs(sol.coefficients[static_cast<size_t>(j)](0) - 1.0 / (j + 1)) < 1e-15);
  }
  // F(z) = -ln(1-z)/z
  CHECK(std::abs(evaluate_solution(analytic_basis(HypergeometricEquation(scalar_params({1, 1}, {2})),
                                                  80)[0],
                                   0.3)(0) -
                 -std::log(0.7) / 0.3) < 1e-13);
}

TEST_CASE("diagonal parameters decouple the analytic coefficients") {
  const HypergeometricParams p({diag({0.5, 2}), diag({1, 1.5})}, {diag({2.5, 3})});
  const auto basis = analytic_basis(HypergeometricEquation(p), 15);
  const auto s0 = analytic_basis(HypergeometricEquation(scalar_params({0.5, 1}, {2.5})), 15)[0];
  const auto s1 = analytic_basis(HypergeometricEquation(scalar_params({2, 1.5}, {3})), 15)[0];
  for (int j = 0; j < 15; ++j) {
    const auto& f0 = basis[0].coefficients[static_cast<size_t>(j)];
    const auto& f1 = basis[1].coefficients[static_cast<size_t>(j)];
    CHECK(std::abs(f0(0) - s0.coefficients[static_cast<size_t>(j)](0)) < 1e-15);
    CHECK(std::abs(f0(1)) == 0.0);
    CHECK(std::abs(f1(1) - s1.coefficients[static_cast<size_t>(j)](0)) < 1e-15);
    CHECK(std::abs(f1(0)) == 0.0);
  }
}

TEST_CASE("nonanalytic solution for scalar c = 1/2") {
  const auto eq = HypergeometricEquation(scalar_params({1, 1}, {0.5}));
  const auto sols = nonanalytic_solution(eq, 0.5, 30);
  REQUIRE(sols.size() == 1);
  CHECK(std::abs(sols[0].exponent - 0.5) < 1e-15);
  CHECK(sols[0].kind == SolutionKind::NonAnalytic);
  // z^{1/2} 2F1(3/2, 3/2; 3/2; z) = z^{1/2} (1 - z)^{-3/2}
  const Complex z = 0.2;
  CHECK(std::abs(evaluate_solution(sols[0], z)(0) - std::sqrt(z) * std::pow(0.8, -1.5)) < 1e-12);
}

TEST_CASE("resonant exponents are rejected") {
  const HypergeometricParams p({diag({1, 1}), diag({1, 1})}, {diag({0.5, 1.5})});
  const HypergeometricEquation eq(p);
  CHECK(code_of([&] { nonanalytic_solution(eq, 1.0, 10); }) == ErrorCode::ResonantExponent);
  CHECK(code_of([&] { nonanalytic_solution(eq, 1.5, 10); }) == ErrorCode::ResonantExponent);
  CHECK(code_of([&] { nonanalytic_solution(eq, 3.0, 10); }) == ErrorCode::ResonantExponent);
}

TEST_CASE("beta outside every spectrum has an empty kernel") {
  const HypergeometricEquation eq(scalar_params({1, 1}, {0.5}));
  CHECK(code_of([&] { nonanalytic_solution(eq, 0.3, 10); }) == ErrorCode::EmptyKernel);
}

TEST_CASE("fundamental set: scalar") {
  const auto set = fundamental_set(HypergeometricEquation(scalar_params({1, 1}, {0.5})), 30);
  REQUIRE(set.size() == 2);
  std::vector<Complex> exps;
  for (const auto& s : set) exps.push_back(s.exponent);
  check_roots(exps, {0, 0.5});
}

TEST_CASE("fundamental set: r = 2 generic") {
  const auto eq = generic_r2();
  const auto set = fundamental_set(eq, 40);
  REQUIRE(set.size() == 4);
  std::vector<Complex> exps;
  for (const auto& s : set) {
    exps.push_back(s.exponent);
    CHECK(check_recursion(eq, s, 1e-12));
  }
  std::vector<Complex> want = {0, 0, 2.0 / 3.0, 1.0 / 3.0};
  const auto g = sorted(exps);
  want = sorted(want);
  for (size_t i = 0; i < 4; ++i) CHECK(std::abs(g[i] - want[i]) < 1e-10);
  CHECK(sample_condition(set, {0.1, 0.25, 0.4}) < 1e8);
}

TEST_CASE("fundamental set: hypothesis violations") {
  const HypergeometricParams rep({diag({1, 2}), diag({1, 1})}, {diag({0.5, 0.5})});
  CHECK(code_of([&] { fundamental_set(HypergeometricEquation(rep), 10); }) ==
        ErrorCode::HypothesisViolation);
  const HypergeometricParams wrong({diag({1, 2})}, {diag({0.5, 0.25})});
  CHECK(code_of([&] { fundamental_set(HypergeometricEquation(wrong), 10); }) ==
        ErrorCode::HypothesisViolation);
  const HypergeometricParams jordan({diag({1, 2}), diag({1, 1})}, {th::rows(2, {0.5, 1, 0, 0.5})});
  try {
    fundamental_set(HypergeometricEquation(jordan), 10);
    FAIL("expected HypothesisViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
    CHECK(std::string(e.what()).find("diagonalizable") != std::string::npos);
  }
}

TEST_CASE("residuals vanish for constructed solutions and detect corruption") {
  const auto eq = generic_r2();
  auto sols = analytic_basis(eq, 25);
  const auto extra = nonanalytic_solution(eq, 1.0 / 3.0, 25);
  sols.insert(sols.end(), extra.begin(), extra.end());
  for (const auto& s : sols) {
    CHECK(check_recursion(eq, s, 1e-12));
    const auto res = residual_coefficients(eq, s);
    const auto scl = residual_scales(eq, s);
    REQUIRE(res.size() == scl.size());
    for (size_t i = 0; i < res.size(); ++i) CHECK(res[i].norm() <= 1e-12 * (1.0 + scl[i]));
  }
  auto bad = sols[0];
  bad.coefficients[5](0) += 1e-3;
  CHECK_FALSE(check_recursion(eq, bad, 1e-10));
  double worst = 0.0;
  for (const auto& v : residual_coefficients(eq, bad)) worst = std::max(worst, v.norm());
  CHECK(worst >= 1e-4);
}

TEST_CASE("pointwise ODE residual") {
  const auto eq = generic_r2();
  const auto set = fundamental_set(eq, 60);
  for (const auto& s : set) {
    for (Complex z : {Complex(0.3, 0.1), Complex(-0.2, 0.35), Complex(0.45, 0)}) {
      const auto pr = ode_residual_at(eq, s, z);
      CHECK(pr.residual <= 1e-9 * std::max(1.0, pr.scale) + pr.tail);
    }
  }
}

TEST_CASE("dimension mismatch in checks") {
  const auto eq = generic_r2();
  const auto sol = analytic_basis(HypergeometricEquation(scalar_params({1, 1}, {2})), 5)[0];
  CHECK_FALSE(check_recursion(eq, sol, 1e-10));
  CHECK(code_of([&] { residual_coefficients(eq, sol); }) == ErrorCode::DimensionMismatch);
}

}  // TEST_SUITE
