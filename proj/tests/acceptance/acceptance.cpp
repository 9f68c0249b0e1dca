// Acceptance suite: one PASS/FAIL line per criterion, with wall time against
// the budget. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mhyp/convergence.hpp"
#include "mhyp/hyperfn.hpp"
#include "mhyp/odesolve.hpp"
#include "mhyp/reduce.hpp"
#include "oracles.hpp"

using namespace mhyp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

using CVec = std::vector<Complex>;

HypergeometricParams scalar_params(const CVec& a, const CVec& b) {
  std::vector<ComplexMatrix> num, den;
  for (Complex x : a) num.push_back(th::scalar(x));
  for (Complex x : b) den.push_back(th::scalar(x));
  return HypergeometricParams(num, den, 1);
}

Complex random_numerator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(0.1, 3.0), im(-1.0, 1.0);
  return {re(rng), im(rng)};
}

Complex random_denominator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(0.2, 4.0), im(-1.0, 1.0);
  return {re(rng), im(rng)};
}

// z inside the region where the series is guaranteed to converge.
Complex random_argument(int n, int m, std::mt19937_64& rng, double entire_radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double angle = 2.0 * std::numbers::pi * u(rng);
  switch (classify_radius(n, m)) {
    case RadiusClass::Entire: return std::polar(entire_radius * u(rng), angle);
    case RadiusClass::UnitDisk: return std::polar(0.5 * u(rng), angle);
    case RadiusClass::DivergentOutsideZero: break;
  }
  return 0.0;
}

// Real eigenvalues for all B_k: fractional parts in [0.08, 0.92] pairwise at
// cyclic distance >= 0.08, each shifted by a random integer in {0, 1}.
std::vector<double> separated_betas(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> frac(0.08, 0.92);
  std::uniform_int_distribution<int> shift(0, 1);
  std::vector<double> fr;
  while (static_cast<int>(fr.size()) < count) {
    const double f = frac(rng);
    bool ok = true;
    for (double g : fr) {
      const double d = std::abs(f - g);
      if (std::min(d, 1.0 - d) < 0.08) ok = false;
    }
    if (ok) fr.push_back(f);
  }
  std::vector<double> out;
  for (double f : fr) out.push_back(f + shift(rng));
  return out;
}

// n = m + 1 parameters of size r whose denominator spectra come from
// separated_betas; numerators are generic complex matrices.
HypergeometricParams generic_params(int r, int m, std::mt19937_64& rng, int n = -1) {
  if (n < 0) n = m + 1;
  const auto betas = separated_betas(r * m, rng);
  std::vector<ComplexMatrix> num, den;
  for (int i = 0; i < n; ++i) num.emplace_back(th::random_complex(r, rng, 0.8));
  for (int k = 0; k < m; ++k) {
    CVec eigs;
    for (int i = 0; i < r; ++i) eigs.push_back(betas[static_cast<size_t>(k * r + i)]);
    den.emplace_back(th::with_spectrum(eigs, rng));
  }
  return HypergeometricParams(num, den, r);
}

/* ---- criteria ---------------------------------------------------------- */

Outcome c1_gauss() {
  const auto p = scalar_params({1, 1}, {2});
  double worst = 0.0;
  for (double z : {0.1, 0.5, 0.9}) {
    const Complex got = eval_nFm(p, z).value(0, 0);
    const double want = -std::log(1.0 - z) / z;
    worst = std::max(worst, std::abs(got - want) / want);
  }
  return {worst <= 1e-10, "max rel err " + sci(worst) + " (limit 1e-10)"};
}

Outcome c2_scalar_oracle() {
  std::mt19937_64 rng(20240202);
  std::uniform_int_distribution<int> pick_n(0, 3), pick_m(0, 2);
  double worst = 0.0;
  int cases = 0;
  for (; cases < 50; ++cases) {
    const int n = pick_n(rng), m = pick_m(rng);
    CVec a, b;
    for (int i = 0; i < n; ++i) a.push_back(random_numerator(rng));
    for (int k = 0; k < m; ++k) b.push_back(random_denominator(rng));
    const Complex z = random_argument(n, m, rng, 3.0);
    const Complex got = eval_nFm(scalar_params(a, b), z).value(0, 0);
    const Complex want = oracle::scalar_pfq(a, b, z);
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  }
  return {worst <= 1e-12,
          std::to_string(cases) + " sets, max rel err " + sci(worst) + " (limit 1e-12)"};
}

Outcome c3_diagonal() {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> pick_r(1, 4), pick_n(0, 3), pick_m(0, 2);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int r = pick_r(rng), m = pick_m(rng);
    int n = pick_n(rng);
    if (n == 0 && m == 0) n = 1;
    std::vector<CVec> na(static_cast<size_t>(n)), db(static_cast<size_t>(m));
    std::vector<ComplexMatrix> num, den;
    for (auto& v : na) {
      for (int i = 0; i < r; ++i) v.push_back(random_numerator(rng));
      num.push_back(ComplexMatrix::diagonal(v));
    }
    for (auto& v : db) {
      for (int i = 0; i < r; ++i) v.push_back(random_denominator(rng));
      den.push_back(ComplexMatrix::diagonal(v));
    }
    const Complex z = random_argument(n, m, rng, 2.0);
    const DenseMatrix got = eval_nFm(HypergeometricParams(num, den, r), z).value.mat();
    for (int i = 0; i < r; ++i) {
      CVec a, b;
      for (const auto& v : na) a.push_back(v[static_cast<size_t>(i)]);
      for (const auto& v : db) b.push_back(v[static_cast<size_t>(i)]);
      const Complex s = eval_nFm(scalar_params(a, b), z).value(0, 0);
      worst = std::max(worst, std::abs(got(i, i) - s) / std::max(1.0, std::abs(s)));
      for (int j = 0; j < r; ++j)
        if (j != i) worst = std::max(worst, std::abs(got(i, j)));
    }
  }
  return {worst <= 1e-11, "20 sets, max err " + sci(worst) + " (limit 1e-11)"};
}

Outcome c4_residuals() {
  std::mt19937_64 rng(4444);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Shape { int r, m, n; };
  const std::vector<Shape> shapes = {{1, 1, 2}, {2, 1, 2}, {3, 1, 2}, {2, 2, 3},
                                     {3, 2, 3}, {2, 2, 1}, {1, 2, 3}, {3, 1, 1}};
  double worst_rec = 0.0, worst_pt = 0.0;
  int solutions = 0;
  bool all_rec = true;
  for (const Shape& s : shapes) {
    const HypergeometricEquation eq(generic_params(s.r, s.m, rng, s.n));
    auto sols = analytic_basis(eq, 60);
    for (const Spectrum& sp : eq.params().denominator_spectra())
      for (Complex beta : sp.eigenvalues) {
        const auto extra = nonanalytic_solution(eq, beta, 60);
        sols.insert(sols.end(), extra.begin(), extra.end());
      }
    for (const auto& sol : sols) {
      ++solutions;
      all_rec = all_rec && check_recursion(eq, sol, 1e-12);
      const auto rows = residual_coefficients(eq, sol);
      const auto scales = residual_scales(eq, sol);
      for (size_t k = 0; k < rows.size(); ++k)
        worst_rec = std::max(worst_rec, rows[k].norm() / (1.0 + scales[k]));
      for (int t = 0; t < 20; ++t) {
        const Complex z = std::polar(0.05 + 0.45 * u(rng), 2.0 * std::numbers::pi * u(rng));
        const auto pr = ode_residual_at(eq, sol, z);
        // ratio <= 1 means residual <= 1e-9 * scale + truncation bound
        worst_pt = std::max(worst_pt, pr.residual / (1e-9 * std::max(1.0, pr.scale) + pr.tail));
      }
    }
  }
  return {all_rec && worst_pt <= 1.0,
          std::to_string(solutions) + " solutions, max recursion residual/(1+scale) " +
              sci(worst_rec) + " (limit 1e-12), max pointwise residual/allowance " +
              sci(worst_pt) + " (limit 1)"};
}

Outcome c5_fundamental() {
  std::mt19937_64 rng(5555);
  std::uniform_int_distribution<int> pick_r(1, 3), pick_m(0, 2);
  double worst_cond = 0.0;
  bool counts_ok = true;
  for (int t = 0; t < 20; ++t) {
    const int r = pick_r(rng), m = pick_m(rng);
    const HypergeometricEquation eq(generic_params(r, m, rng));
    const auto set = fundamental_set(eq, 40);
    counts_ok = counts_ok && static_cast<int>(set.size()) == r * (m + 1);
    worst_cond = std::max(worst_cond, sample_condition(set, {0.1, 0.25, 0.4}));
  }
  return {counts_ok && worst_cond < 1e8,
          std::string("20 instances, counts ") + (counts_ok ? "r(m+1)" : "WRONG") +
              ", worst sample condition " + sci(worst_cond) + " (limit 1e8)"};
}

Outcome c6_indicial() {
  std::mt19937_64 rng(6666);
  std::uniform_int_distribution<int> pick_r(1, 3), pick_m(1, 2);
  std::uniform_real_distribution<double> eig(-2.0, 3.0);
  double worst = 0.0;
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    const int r = pick_r(rng), m = pick_m(rng);
    std::vector<double> betas;
    while (static_cast<int>(betas.size()) < r * m) {
      const double b = eig(rng);
      bool good = std::abs(b - 1.0) > 0.05;
      for (double c : betas) good = good && std::abs(b - c) > 0.05;
      if (good) betas.push_back(b);
    }
    std::vector<Eigen::MatrixXd> breal;
    std::vector<ComplexMatrix> num, den;
    for (int k = 0; k < m; ++k) {
      std::vector<double> eigs(betas.begin() + k * r, betas.begin() + (k + 1) * r);
      breal.push_back(oracle::with_eigenvalues(eigs, rng));
      den.emplace_back(DenseMatrix(breal.back().cast<Complex>()));
    }
    for (int i = 0; i <= m; ++i) num.emplace_back(th::random_complex(r, rng));
    const auto roots = indicial_roots(HypergeometricEquation(HypergeometricParams(num, den, r)));
    ok = ok && roots.total == r * (m + 1);

    const auto sign_roots = oracle::indicial_sign_roots(breal, r, -3.0, 4.0);
    // every sign change is an indicial root
    for (double s : sign_roots) {
      double best = 1e300;
      for (const auto& root : roots.roots) best = std::min(best, std::abs(root.value - s));
      worst = std::max(worst, best);
    }
    // every odd-multiplicity indicial root is a sign change
    for (const auto& root : roots.roots) {
      if (root.multiplicity % 2 == 0) continue;
      double best = 1e300;
      for (double s : sign_roots) best = std::min(best, std::abs(root.value - s));
      worst = std::max(worst, best);
    }
  }
  return {ok && worst <= 1e-8, "20 instances, max root mismatch " + sci(worst) + " (limit 1e-8)"};
}

Outcome c7_unit_circle() {
  std::ostringstream detail;
  // certified scalar instance: Gauss sum 4/3
  const auto cert = boundary_probe(scalar_params({1, 1}, {5}), 1.0, 100000, 0.0, 100000);
  const double gauss_err = std::abs(cert.final_sum(0, 0) - 4.0 / 3.0);
  const bool a = unit_circle_certificate(scalar_params({1, 1}, {5})).satisfied && gauss_err <= 1e-8;
  detail << "2F1(1,1;5;1) err " << sci(gauss_err) << " (limit 1e-8); ";

  // uncertified instance: harmonic growth
  const auto harm = boundary_probe(scalar_params({1, 1}, {2}), 1.0, 100000, 0.0, 100);
  long long crossed = -1;
  for (const auto& row : harm.rows)
    if (row.partial_sum_norm > 10.0) {
      crossed = row.j;
      break;
    }
  const bool b = !unit_circle_certificate(scalar_params({1, 1}, {2})).satisfied && crossed > 0;
  detail << "2F1(1,1;2;1) partial sum > 10 at J=" << crossed << "; ";

  // certified r = 2 Hermitian instance at 8 points
  const ComplexMatrix bh = th::rows(2, {8, Complex(1, -1), Complex(1, 1), 9});
  const HypergeometricParams p({th::rows(2, {0.5, 0.25, 0, Complex(0, 0.5)}),
                                th::rows(2, {0.75, 0, Complex(0.1, 0.2), -0.5})},
                               {bh});
  const auto c = unit_circle_certificate(p);
  bool cauchy = c.satisfied;
  long long worst_j0 = 0;
  for (int k = 0; k < 8 && cauchy; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0);
    long long found = -1;
    for (long long j0 = 100; j0 <= 100000; j0 *= 2) {
      if (cauchy_tail(p, z, j0, 100) < 1e-8) {
        found = j0;
        break;
      }
    }
    cauchy = cauchy && found > 0;
    worst_j0 = std::max(worst_j0, found);
  }
  detail << "r=2 Hermitian (lambda " << sci(c.lambda) << ") Cauchy to 1e-8 by J0=" << worst_j0
         << " at 8 points";
  return {a && b && cauchy, detail.str()};
}

Outcome c8_radius() {
  std::mt19937_64 rng(8888);
  std::ostringstream detail;
  const auto mat = [&](Complex shift) {
    return ComplexMatrix(DenseMatrix(th::random_complex(2, rng, 0.3) +
                                     shift * DenseMatrix::Identity(2, 2)));
  };
  // Entire: n = 1, m = 1
  const HypergeometricParams pe({mat(1.0)}, {mat(1.5)});
  const auto re = term_ratios(pe, 2.0, 400);
  const bool e = classify_radius(1, 1) == RadiusClass::Entire && re.back() < 0.02 &&
                 re[399] < re[99];
  detail << "Entire ratio(400)=" << sci(re.back()) << "; ";
  // UnitDisk: n = 2, m = 1, |z| = 0.5
  const HypergeometricParams pu({mat(1.0), mat(1.0)}, {mat(2.0)});
  const Complex zu = std::polar(0.5, 1.0);
  const auto ru = term_ratios(pu, zu, 2000);
  const bool d = classify_radius(2, 1) == RadiusClass::UnitDisk &&
                 std::abs(ru.back() - 0.5) < 0.01;
  detail << "UnitDisk ratio(2000)=" << sci(ru.back()) << " vs |z|=0.5; ";
  // DivergentOutsideZero: n = 3, m = 1, growth ~ j^(n-m-1) = j
  const HypergeometricParams pw({mat(1.0), mat(1.0), mat(1.0)}, {mat(2.0)});
  const auto rw = term_ratios(pw, 0.1, 400);
  const double growth = rw[399] / rw[199];
  const bool w = classify_radius(3, 1) == RadiusClass::DivergentOutsideZero && rw.back() > 1.0 &&
                 std::abs(growth - 2.0) < 0.05;
  detail << "Divergent ratio(400)/ratio(200)=" << sci(growth) << " (expect 2)";
  return {e && d && w, detail.str()};
}

Outcome c9_reduction() {
  std::mt19937_64 rng(9999);
  std::uniform_int_distribution<int> pick_r(1, 4);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  double worst = 0.0;
  int reduced = 0;
  for (int t = 0; t < 50; ++t) {
    const int r = pick_r(rng);
    CVec eigs;
    while (static_cast<int>(eigs.size()) < r) {
      const Complex l(box(rng), box(rng));
      bool good = true;
      for (Complex x : eigs) good = good && std::abs(x - l) > 0.1;
      if (good) eigs.push_back(l);
    }
    const DenseMatrix B = th::with_spectrum(eigs, rng);
    const DenseMatrix A = th::random_complex(r, rng);
    const DenseMatrix I = DenseMatrix::Identity(r, r);
    const SecondOrderEquation eq(ComplexMatrix(DenseMatrix(I + th::random_complex(r, rng, 0.2))),
                                 ComplexMatrix(DenseMatrix(A + B + I)),
                                 ComplexMatrix(DenseMatrix(A * B)));
    const auto res = reduce_to_hypergeometric(eq);
    if (res.status != ReductionStatus::Reduced) continue;
    ++reduced;
    const auto& dg = res.diagnostics;
    worst = std::max({worst, dg.solvent_residual, dg.sum_residual, dg.product_residual});
  }
  const SecondOrderEquation nil(ComplexMatrix::identity(2), ComplexMatrix::identity(2),
                                th::rows(2, {0, -1, 0, 0}));
  const auto nres = reduce_to_hypergeometric(nil);
  const bool nil_ok = nres.status == ReductionStatus::NotReducible && nres.selections_tried > 0;
  return {reduced == 50 && worst <= 1e-10 && nil_ok,
          std::to_string(reduced) + "/50 reduced, max residual " + sci(worst) +
              " (limit 1e-10); nilpotent " + reduction_status_name(nres.status) + " after " +
              std::to_string(nres.selections_tried) + " exhaustive selections"};
}

Outcome c10_spherical() {
  const auto eq = spherical_example(1, 0, 0, 0.5);
  const bool exact = eq.C == th::rows(2, {1, 0, 1, 3}) && eq.U == th::diag({3, 4}) &&
                     eq.V == th::rows(2, {0, -0.5, 0, 1.5});
  const auto r = reduce_spherical_example(1, 0, 0, 0.5);
  double err = 1e300;
  if (r.status == ReductionStatus::Reduced) {
    const DenseMatrix I = DenseMatrix::Identity(2, 2);
    err = std::max(th::max_abs_diff(r.A->mat() + r.B->mat() + I, eq.U.mat()),
                   th::max_abs_diff(r.A->mat() * r.B->mat(), eq.V.mat()));
  }
  return {exact && err <= 1e-12, std::string("generated matrices ") +
                                     (exact ? "exact" : "DIFFER") + ", max identity error " +
                                     sci(err) + " (limit 1e-12)"};
}

Outcome c11_shift_zero() {
  std::mt19937_64 rng(1111);
  std::uniform_int_distribution<int> pick_r(1, 3), pick_m(0, 2), pick_extra(0, 1);
  int identical = 0;
  for (int t = 0; t < 10; ++t) {
    const int r = pick_r(rng), m = pick_m(rng);
    const int n = m + pick_extra(rng);  // Entire or UnitDisk
    std::vector<ComplexMatrix> num, den;
    for (int i = 0; i < std::max(n, 1); ++i)
      num.emplace_back(th::random_complex(r, rng, 1.0));
    for (int k = 0; k < m; ++k)
      den.emplace_back(DenseMatrix(th::random_complex(r, rng, 0.5) +
                                   2.5 * DenseMatrix::Identity(r, r)));
    const HypergeometricParams p(num, den, r);
    const Complex z = random_argument(p.n(), p.m(), rng, 2.0);
    const auto a = eval_nFm(p, z);
    const auto b = eval_shifted_nFm(p, 0.0, z);
    if (a.value == b.value && a.terms_used == b.terms_used) ++identical;
  }
  return {identical == 10, std::to_string(identical) + "/10 bit-identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "scalar Gauss oracle", 1.0, c1_gauss},
      {2, "scalar generalized oracle", 5.0, c2_scalar_oracle},
      {3, "diagonal decoupling", 5.0, c3_diagonal},
      {4, "coefficient and pointwise residuals", 10.0, c4_residuals},
      {5, "fundamental set size and rank", 20.0, c5_fundamental},
      {6, "indicial roots vs sign-change oracle", 5.0, c6_indicial},
      {7, "unit-circle certificate", 30.0, c7_unit_circle},
      {8, "radius trichotomy", 5.0, c8_radius},
      {9, "reduction", 20.0, c9_reduction},
      {10, "spherical example", 5.0, c10_spherical},
      {11, "shift p = 0 consistency", 2.0, c11_shift_zero},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget_s;
    failures += pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s: %s [%.3f s of %.0f s]\n", c.id, pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str(), secs, c.budget_s);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
