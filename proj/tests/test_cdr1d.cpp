#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "exact_1d.hpp"
#include "fsm/cdr1d.hpp"

using namespace fsm;

namespace {

double char_residual(double pe, double da, std::complex<double> eta) {
  return std::abs(eta * eta - pe * eta + pe * da);
}

// L applied through the basis' own analytic derivatives.
double operator_residual(const CdrParams1D& p, const HomogeneousBasis1D& basis, int which,
                         double x) {
  return p.Pe * basis.value(which, x, 1) - basis.value(which, x, 2) -
         p.Pe * p.Da * basis.value(which, x, 0);
}

// Coefficients of L[phi_s] in plain (x/a)^j, derived independently of the
// solver's banded back-substitution.
std::vector<double> apply_operator_to_poly(const CdrParams1D& p, const ShiftedPoly& q) {
  const int top = static_cast<int>(q.coef.size()) - 1 + q.shift;
  std::vector<double> out(static_cast<size_t>(top) + 1, 0.0);
  for (size_t j = 0; j < q.coef.size(); ++j) {
    const int pw = static_cast<int>(j) + q.shift;
    const double g = q.coef[j];
    // -Pe Da (x/a)^pw
    out[static_cast<size_t>(pw)] += -p.Pe * p.Da * g;
    // Pe * pw/a * (x/a)^(pw-1)
    if (pw >= 1) out[static_cast<size_t>(pw - 1)] += p.Pe * pw / p.a * g;
    // - pw(pw-1)/a^2 (x/a)^(pw-2)
    if (pw >= 2) {
      out[static_cast<size_t>(pw - 2)] += -static_cast<double>(pw) * (pw - 1) / (p.a * p.a) * g;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("regime classification examples") {
  {
    const RootData r = classify_regime({3, 90, 1});
    CHECK(r.regime == Regime::complex_pair);
    CHECK(r.alpha10 == doctest::Approx(-1.5));
    CHECK(r.alpha20 == doctest::Approx(std::sqrt(1071.0) / 2).epsilon(1e-12));
    CHECK(r.alpha20 == doctest::Approx(16.3630).epsilon(1e-4));
    CHECK(char_residual(3, 90, r.eta1) <= 1e-10 * 1080);
  }
  {
    const RootData r = classify_regime({2, 0.5, 1});
    CHECK(r.regime == Regime::double_real);
    CHECK(r.eta1.real() == doctest::Approx(1.0));
    CHECK(r.eta1.imag() == 0.0);
  }
  {
    const RootData r = classify_regime({200, -1, 1});
    CHECK(r.regime == Regime::distinct_real);
    CHECK(r.eta1.real() == doctest::Approx(200.9950).epsilon(1e-6));
    CHECK(r.eta2.real() == doctest::Approx(-0.9950).epsilon(1e-4));
  }
  {
    const RootData r = classify_regime({30, 1, 1});
    CHECK(r.regime == Regime::distinct_real);
    CHECK(r.eta1.real() == doctest::Approx(28.9642).epsilon(1e-5));
    CHECK(r.eta2.real() == doctest::Approx(1.0358).epsilon(1e-4));
  }
}

TEST_CASE("root residual sweep") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pe(-300.0, 300.0);
  std::uniform_real_distribution<double> da(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double Pe = pe(rng), Da = da(rng);
    const RootData r = classify_regime({Pe, Da, 1.0});
    const double scale = std::max({1.0, Pe * Pe, std::abs(Pe * Da)});
    CHECK(char_residual(Pe, Da, r.eta1) <= 1e-10 * scale);
    CHECK(char_residual(Pe, Da, r.eta2) <= 1e-10 * scale);
  }
}

TEST_CASE("laplace kernel basis") {
  const HomogeneousBasis1D basis({0, 0, 2.0});
  CHECK(basis.roots().regime == Regime::double_real);
  CHECK(basis.value(0, 1.3, 0) == doctest::Approx(1.0));
  CHECK(basis.value(0, 1.3, 1) == doctest::Approx(0.0));
  CHECK(basis.value(1, 1.0, 0) == doctest::Approx(0.5));  // x/a
  CHECK(basis.value(1, -2.0, 0) == doctest::Approx(-1.0));
  CHECK(basis.value(1, 0.7, 1) == doctest::Approx(0.5));
}

TEST_CASE("operator annihilation at 50 points") {
  for (const CdrParams1D p :
       {CdrParams1D{3, 90, 1}, CdrParams1D{1, 30, 1}, CdrParams1D{30, 1, 1},
        CdrParams1D{200, -1, 0.5}, CdrParams1D{2, 0.5, 1}}) {
    const HomogeneousBasis1D basis(p);
    for (int which = 0; which < 2; ++which) {
      double scale = 1.0;
      for (int i = 0; i < 50; ++i) {
        const double x = -p.a + 2 * p.a * i / 49.0;
        scale = std::max({scale, std::abs(p.Pe * basis.value(which, x, 1)),
                          std::abs(basis.value(which, x, 2))});
      }
      for (int i = 0; i < 50; ++i) {
        const double x = -p.a + 2 * p.a * i / 49.0;
        CHECK(std::abs(operator_residual(p, basis, which, x)) <= 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("operator annihilation random sweep") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pe(-300.0, 300.0);
  std::uniform_real_distribution<double> da(-100.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const CdrParams1D p{pe(rng), da(rng), 1.0};
    const HomogeneousBasis1D basis(p);
    for (int which = 0; which < 2; ++which) {
      double scale = 1.0, worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double x = -p.a + 2 * p.a * i / 49.0;
        scale = std::max({scale, std::abs(p.Pe * basis.value(which, x, 1)),
                          std::abs(basis.value(which, x, 2)),
                          std::abs(p.Pe * p.Da * basis.value(which, x, 0))});
        worst = std::max(worst, std::abs(operator_residual(p, basis, which, x)));
      }
      CHECK(worst <= 1e-8 * scale);
    }
  }
}

TEST_CASE("boundary-layer normalization") {
  const CdrParams1D p{200, -1, 0.5};
  const HomogeneousBasis1D basis(p);
  // the steep branch reaches 1 at the outflow end and underflows at the other
  CHECK(std::abs(basis.value(1, p.a, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(basis.value(1, -p.a, 0)) <= std::exp(-200.0));
  // the mild branch is 1 at the left end
  CHECK(std::abs(basis.value(0, -p.a, 0)) == doctest::Approx(1.0));
  CHECK(std::max(std::abs(basis.value(0, p.a, 0)), std::abs(basis.value(0, -p.a, 0))) ==
        doctest::Approx(1.0));
}

TEST_CASE("interpolation of the cubic benchmark is exact") {
  const SourceModel f = PolynomialSource{{1e3, 2e3, 5e3, 1e4}};
  const auto h = interpolate_source(f, 3, 1.0);
  REQUIRE(h.size() == 4);
  CHECK(h[0] == doctest::Approx(1e3).epsilon(1e-13));
  CHECK(h[1] == doctest::Approx(2e3).epsilon(1e-13));
  CHECK(h[2] == doctest::Approx(5e3).epsilon(1e-13));
  CHECK(h[3] == doctest::Approx(1e4).epsilon(1e-13));
}

TEST_CASE("interpolation examples and errors") {
  const auto c = interpolate_source(PolynomialSource{{1e3}}, 1, 1.0);
  CHECK(c[0] == doctest::Approx(1e3));
  CHECK(c[1] == doctest::Approx(0.0));

  // secant of x^2 through (-1, 1) and (1, 1)
  const auto s = interpolate_source(
      SampledSource{[](double x) { return x * x; }}, 1, 1.0);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(interpolate_source(DiracDeltaSource{0, 1}, 2, 1.0), SourceError);
}

TEST_CASE("interpolation matches the source at the nodes") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  for (int order : {1, 2, 3, 5, 8}) {
    std::vector<double> c(7);
    for (auto& v : c) v = coeff(rng);
    const SourceModel f = PolynomialSource{c};
    const double a = 1.5;
    const auto h = interpolate_source(f, order, a);
    for (int i = 0; i <= order; ++i) {
      const double x = -a + 2 * a * i / order;
      double fs = 0.0;
      for (size_t j = h.size(); j-- > 0;) fs = fs * (x / a) + h[j];
      CHECK(fs == doctest::Approx(eval_source(f, x, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("supplementary solution examples") {
  {
    const ShiftedPoly q = solve_supplementary({3, 90, 1}, {1000.0});
    CHECK(q.shift == 0);
    CHECK(q.eval(0.37, 0) == doctest::Approx(-1000.0 / 270.0).epsilon(1e-14));
  }
  {
    const ShiftedPoly q = solve_supplementary({2, 0, 1}, {7.0});
    CHECK(q.shift == 1);
    CHECK(q.eval(0.5, 0) == doctest::Approx(7.0 / 2.0 * 0.5).epsilon(1e-13));
    CHECK(q.eval(0.5, 1) == doctest::Approx(3.5).epsilon(1e-13));
  }
  {
    const ShiftedPoly q = solve_supplementary({0, 0, 1}, {2.0});
    CHECK(q.shift == 2);
    CHECK(q.eval(0.5, 0) == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(q.eval(1.0, 0) == doctest::Approx(-1.0).epsilon(1e-13));
  }
}

TEST_CASE("supplementary exactness as a polynomial identity") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  const std::vector<CdrParams1D> params{
      {3, 90, 1}, {1, 30, 2}, {30, 1, 0.5}, {200, -1, 1}, {2, 0, 1}, {-4, 0, 1.5}, {0, 0, 1},
      {0, 17, 1}};
  for (const auto& p : params) {
    for (int deg : {0, 1, 3, 6}) {
      std::vector<double> fs(static_cast<size_t>(deg) + 1);
      for (auto& v : fs) v = coeff(rng) * 100.0;
      const ShiftedPoly q = solve_supplementary(p, fs);
      const auto lq = apply_operator_to_poly(p, q);
      double scale = 1.0;
      for (double v : fs) scale = std::max(scale, std::abs(v));
      for (size_t j = 0; j < lq.size(); ++j) {
        const double want = j < fs.size() ? fs[j] : 0.0;
        CHECK(std::abs(lq[j] - want) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("coefficient comparison 2x2 example") {
  TrigSeries1D fp(M_PI, 1);
  fp.set_cos(1, 1.0);
  const TrigSeries1D q0 = particular_fccm({1, 0, M_PI}, fp);
  CHECK(q0.cos_coeff(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(q0.sin_coeff(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(q0.cos_coeff(0) == 0.0);
}

TEST_CASE("coefficient comparison zero source and mean guard") {
  TrigSeries1D zero(1.0, 4);
  CHECK(particular_fccm({3, 90, 1}, zero).coeff_max() == 0.0);

  TrigSeries1D with_mean(1.0, 2);
  with_mean.set_cos(0, 1.0);
  CHECK_THROWS_AS(particular_fccm({0, 5, 1}, with_mean), SingularModeError);
  CHECK_THROWS_AS(particular_cm({2, 0, 1}, with_mean), SingularModeError);
}

TEST_CASE("coefficient comparison solves the truncated equation exactly") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  std::uniform_real_distribution<double> pe(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    const CdrParams1D p{pe(rng), pe(rng) / 10.0, 1.0};
    if (p.Pe * p.Da == 0.0) continue;
    const int modes = 6;
    TrigSeries1D fp(p.a, modes);
    for (int m = 0; m <= modes; ++m) {
      fp.set_cos(m, coeff(rng));
      if (m >= 1) fp.set_sin(m, coeff(rng));
    }
    const TrigSeries1D q0 = particular_fccm(p, fp);
    // forward application of L in coefficient space
    const double peda = p.Pe * p.Da;
    CHECK(std::abs(-peda * q0.cos_coeff(0) - fp.cos_coeff(0)) <= 1e-10 * fp.coeff_max());
    for (int m = 1; m <= modes; ++m) {
      const double am = m * M_PI / p.a;
      const double d = am * am - peda;
      const double lc = d * q0.cos_coeff(m) + p.Pe * am * q0.sin_coeff(m);
      const double ls = -p.Pe * am * q0.cos_coeff(m) + d * q0.sin_coeff(m);
      CHECK(std::abs(lc - fp.cos_coeff(m)) <= 1e-10 * std::max(1.0, fp.coeff_max()));
      CHECK(std::abs(ls - fp.sin_coeff(m)) <= 1e-10 * std::max(1.0, fp.coeff_max()));
    }
  }
}

TEST_CASE("collocation agrees with coefficient comparison") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  const std::vector<CdrParams1D> params{{3, 90, 1}, {1, 30, 1}, {30, 1, 1}, {200, -1, 0.5}};
  for (const auto& p : params) {
    const int modes = 8;
    TrigSeries1D fp(p.a, modes);
    for (int m = 0; m <= modes; ++m) {
      fp.set_cos(m, coeff(rng));
      if (m >= 1) fp.set_sin(m, coeff(rng));
    }
    const TrigSeries1D a = particular_fccm(p, fp);
    const CmResult b = particular_cm(p, fp);
    const double scale = std::max(a.coeff_max(), 1e-30);
    for (int m = 0; m <= modes; ++m) {
      CHECK(std::abs(a.cos_coeff(m) - b.q0.cos_coeff(m)) <= 1e-8 * scale);
      if (m >= 1) CHECK(std::abs(a.sin_coeff(m) - b.q0.sin_coeff(m)) <= 1e-8 * scale);
    }
    CHECK(b.condition < 1e12);
  }
}

TEST_CASE("collocation zero source") {
  TrigSeries1D zero(1.0, 5);
  CHECK(particular_cm({3, 90, 1}, zero).q0.coeff_max() <= 1e-12);
}

TEST_CASE("single-mode closed form") {
  // unit cosine at m = 2, solved by hand from the 2x2 block
  const CdrParams1D p{3, 90, 1};
  TrigSeries1D fp(p.a, 3);
  fp.set_cos(2, 1.0);
  const double am = 2 * M_PI;
  const double d = am * am - 270.0, e = 3 * am;
  const double det = d * d + e * e;
  const TrigSeries1D q0 = particular_fccm(p, fp);
  CHECK(q0.cos_coeff(2) == doctest::Approx(d / det).epsilon(1e-13));
  CHECK(q0.sin_coeff(2) == doctest::Approx(e / det).epsilon(1e-13));
  const CmResult cm = particular_cm(p, fp);
  CHECK(cm.q0.cos_coeff(2) == doctest::Approx(d / det).epsilon(1e-9));
  CHECK(cm.q0.sin_coeff(2) == doctest::Approx(e / det).epsilon(1e-9));
}

TEST_CASE("zero source and zero data give the zero solution") {
  const BcPair1D bc{{BcKind::dirichlet, 0.0}, {BcKind::dirichlet, 0.0}};
  const FsmSolution1D sol = solve_1d({3, 90, 1}, PolynomialSource{{}}, 0, bc, 8,
                                     ParticularMethod::fccm);
  for (double x : {-1.0, -0.3, 0.0, 0.9, 1.0}) {
    CHECK(std::abs(sol.eval(x, 0)) <= 1e-14);
    CHECK(std::abs(sol.eval(x, 1)) <= 1e-14);
  }
}

TEST_CASE("constant source reproduces the closed form exactly") {
  const std::vector<double> c{1e3};
  const BcPair1D bc{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};
  for (const CdrParams1D p :
       {CdrParams1D{3, 90, 1}, CdrParams1D{1, 30, 1}, CdrParams1D{30, 1, 1},
        CdrParams1D{200, -1, 1}}) {
    const auto exact = testutil::Exact1D::build(p, c, bc);
    const FsmSolution1D sol =
        solve_1d(p, PolynomialSource{c}, 0, bc, 8, ParticularMethod::fccm);
    for (int k = 0; k < 3; ++k) {
      double emax = 0.0, rmax = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = -p.a + 2 * p.a * i / 200.0;
        emax = std::max(emax, std::abs(sol.eval(x, k) - exact.eval(x, k)));
        rmax = std::max(rmax, std::abs(exact.eval(x, k)));
      }
      CHECK(emax <= 1e-10 * rmax);
    }
  }
}

TEST_CASE("cubic source with order-3 interpolation is exact") {
  const std::vector<double> c{1e3, 2e3, 5e3, 1e4};
  const BcPair1D bc{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};
  for (const CdrParams1D p :
       {CdrParams1D{3, 90, 1}, CdrParams1D{200, -1, 1}}) {
    const FsmSolution1D sol =
        solve_1d(p, PolynomialSource{c}, 3, bc, 4, ParticularMethod::fccm);
    CHECK(sol.particular().coeff_max() <= 1e-12);
    const auto exact = testutil::Exact1D::build(p, c, bc);
    for (int k = 0; k < 3; ++k) {
      double emax = 0.0, rmax = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = -p.a + 2 * p.a * i / 200.0;
        emax = std::max(emax, std::abs(sol.eval(x, k) - exact.eval(x, k)));
        rmax = std::max(rmax, std::abs(exact.eval(x, k)));
      }
      CHECK(emax <= 1e-10 * rmax);
    }
  }
}

TEST_CASE("boundary conditions are enforced to construction accuracy") {
  const SourceModel f = PolynomialSource{{1e3, 2e3, 5e3, 1e4}};
  for (const CdrParams1D p : {CdrParams1D{3, 90, 1}, CdrParams1D{30, 1, 1}}) {
    const BcPair1D dd{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};
    const FsmSolution1D s1 = solve_1d(p, f, 0, dd, 40, ParticularMethod::fccm);
    CHECK(std::abs(s1.eval(-p.a, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(s1.eval(p.a, 0)) <= 1e-10);

    const BcPair1D dn{{BcKind::dirichlet, 1.0}, {BcKind::neumann, 1.0}};
    const FsmSolution1D s2 = solve_1d(p, f, 0, dn, 40, ParticularMethod::fccm);
    CHECK(std::abs(s2.eval(-p.a, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(s2.eval(p.a, 1) - 1.0) <= 1e-9 * std::max(1.0, std::abs(s2.eval(p.a, 1))));
    CHECK(s2.diagnostics().bc_residual[1] <= 1e-9);
  }
}

TEST_CASE("superposition") {
  const CdrParams1D p{3, 90, 1};
  const SourceModel f1 = PolynomialSource{{1e3, 0, 5e3}};
  const SourceModel f2 = PolynomialSource{{0, 2e3, 0, 1e4}};
  const SourceModel fsum = PolynomialSource{{1e3, 2e3, 5e3, 1e4}};
  const BcPair1D b1{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.5}};
  const BcPair1D b2{{BcKind::dirichlet, -0.25}, {BcKind::dirichlet, 2.0}};
  const BcPair1D bsum{{BcKind::dirichlet, 0.75}, {BcKind::dirichlet, 2.5}};
  const auto s1 = solve_1d(p, f1, 0, b1, 24, ParticularMethod::fccm);
  const auto s2 = solve_1d(p, f2, 0, b2, 24, ParticularMethod::fccm);
  const auto ss = solve_1d(p, fsum, 0, bsum, 24, ParticularMethod::fccm);
  double scale = 0.0;
  for (int i = 0; i <= 100; ++i) {
    scale = std::max(scale, std::abs(ss.eval(-1 + 0.02 * i, 0)));
  }
  for (int i = 0; i <= 100; ++i) {
    const double x = -1 + 0.02 * i;
    CHECK(std::abs(s1.eval(x, 0) + s2.eval(x, 0) - ss.eval(x, 0)) <= 1e-9 * scale);
  }
}

TEST_CASE("resonant interval is rejected with a condition estimate") {
  // 4 Pe Da - Pe^2 = pi^2 puts a Dirichlet eigenvalue on the interval
  const double pe = 1.0;
  const double da = (M_PI * M_PI + 1.0) / 4.0;
  const BcPair1D bc{{BcKind::dirichlet, 0.0}, {BcKind::dirichlet, 0.0}};
  CHECK_THROWS_AS(
      solve_1d({pe, da, 1.0}, PolynomialSource{{1.0}}, 0, bc, 4, ParticularMethod::fccm),
      IllPosedError);
}

TEST_CASE("delta source rejects the interpolation path") {
  const BcPair1D bc{{BcKind::dirichlet, 0.0}, {BcKind::dirichlet, 0.0}};
  CHECK_THROWS_AS(
      solve_1d({3, 90, 0.5}, DiracDeltaSource{0.1, 10.0}, 2, bc, 8, ParticularMethod::fccm),
      SourceError);
}

TEST_CASE("mean absorption for the pure diffusion operator") {
  // -phi'' = 2 with zero Dirichlet data has the parabola 1 - x^2
  const BcPair1D bc{{BcKind::dirichlet, 0.0}, {BcKind::dirichlet, 0.0}};
  const FsmSolution1D sol =
      solve_1d({0, 0, 1}, PolynomialSource{{2.0}}, 0, bc, 4, ParticularMethod::fccm);
  CHECK(sol.eval(0.0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.eval(0.5, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sol.eval(0.3, 2) == doctest::Approx(-2.0).epsilon(1e-12));

  // convection-diffusion (Da = 0): L[x] = Pe absorbs the mean
  const FsmSolution1D cd =
      solve_1d({2, 0, 1}, PolynomialSource{{4.0}}, 0, bc, 30, ParticularMethod::fccm);
  // closed form: phi = 2x + A + B e^{2x}, A, B from the Dirichlet data
  const double b = -4.0 / (std::exp(2.0) - std::exp(-2.0));
  const double aa = 2.0 - b * std::exp(-2.0);
  for (double x : {-0.6, 0.0, 0.8}) {
    CHECK(cd.eval(x, 0) == doctest::Approx(2 * x + aa + b * std::exp(2 * x)).epsilon(1e-10));
  }
}
