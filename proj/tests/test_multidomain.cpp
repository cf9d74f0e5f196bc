#include <cmath>

#include "doctest.h"
#include "fsm/multidomain.hpp"

using namespace fsm;

namespace {

const BcPair1D kUnitDrop{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};

MultiDomainSpec pulse_spec(double a2, int order = 1, int modes = 8) {
  MultiDomainSpec spec;
  spec.breakpoints = {0.0, 0.5 - a2, 0.5 + a2, 1.0};
  spec.schemes = {SubdomainScheme{order, modes, ParticularMethod::fccm}};
  return spec;
}

}  // namespace

TEST_CASE("harmonic interpolation across two subintervals") {
  MultiDomainSpec spec;
  spec.breakpoints = {0.0, 0.5, 1.0};
  spec.schemes = {SubdomainScheme{0, 4, ParticularMethod::fccm}};
  const auto sol = solve_multidomain(0, 0, spec, PolynomialSource{{}}, kUnitDrop);
  CHECK(sol.endpoint_values()[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.eval(0.25, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sol.eval(0.9, 0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("interface continuity of value and flux") {
  for (const auto [pe, da] : {std::pair{3.0, 90.0}, {1.0, 30.0}, {30.0, 1.0}, {200.0, -1.0}}) {
    const double a2 = 1e-2;
    const auto spec = pulse_spec(a2);
    const SourceModel f = RectPulseSource{0.5, a2, 1000.0};
    const auto sol = solve_multidomain(pe, da, spec, f, kUnitDrop);
    double scale1 = 1.0;
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) scale1 = std::max(scale1, std::abs(sol.eval(x, 1)));
    for (int i = 1; i < 3; ++i) {
      const double xb = sol.breakpoints()[static_cast<size_t>(i)];
      const double eps = 1e-13;
      const double v_left = sol.eval(xb - eps, 0), v_right = sol.eval(xb + eps, 0);
      CHECK(std::abs(v_left - v_right) <=
            1e-8 * std::max(1.0, std::max(std::abs(v_left), std::abs(v_right))));
      const double d_left = sol.piece(i - 1).eval(
          xb - 0.5 * (sol.breakpoints()[static_cast<size_t>(i - 1)] + xb), 1);
      const double d_right = sol.piece(i).eval(
          xb - 0.5 * (xb + sol.breakpoints()[static_cast<size_t>(i + 1)]), 1);
      CHECK(std::abs(d_left - d_right) <= 1e-8 * scale1);
    }
  }
}

TEST_CASE("total flux jump approaches the pulse integral") {
  // integrate the equation across the pulse: the convective+diffusive flux
  // Pe phi - phi' jumps by the source mass up to the Pe Da phi term of order
  // a2, which needs a2 = 1e-4 to drop below 1% on the strong-reaction sets
  const auto jump_for = [](double pe, double da, double a2) {
    const auto sol = solve_multidomain(pe, da, pulse_spec(a2), RectPulseSource{0.5, a2, 1000.0},
                                       kUnitDrop);
    const double xl = 0.5 - a2, xr = 0.5 + a2;
    return (pe * sol.eval(xr, 0) - sol.eval(xr, 1)) -
           (pe * sol.eval(xl, 0) - sol.eval(xl, 1));
  };
  CHECK(std::abs(jump_for(30, 1, 1e-3) - 1000.0) <= 10.0);
  for (const auto [pe, da] : {std::pair{3.0, 90.0}, {1.0, 30.0}, {30.0, 1.0}, {200.0, -1.0}}) {
    CHECK(std::abs(jump_for(pe, da, 1e-4) - 1000.0) <= 10.0);
  }
}

TEST_CASE("flux jump tightens as the pulse narrows") {
  const auto jump_for = [](double a2) {
    const auto sol = solve_multidomain(30.0, 1.0, pulse_spec(a2), RectPulseSource{0.5, a2, 1000.0},
                                       kUnitDrop);
    const double xl = 0.5 - a2, xr = 0.5 + a2;
    return (30.0 * sol.eval(xr, 0) - sol.eval(xr, 1)) -
           (30.0 * sol.eval(xl, 0) - sol.eval(xl, 1));
  };
  const double e2 = std::abs(jump_for(1e-2) - 1000.0);
  const double e4 = std::abs(jump_for(1e-4) - 1000.0);
  CHECK(e4 < e2);
  CHECK(std::abs(jump_for(1e-4) - 1000.0) <= 1.0);
}

TEST_CASE("pure diffusion point source gives the tent profile") {
  // hand Green's function of -d^2/dx^2 with unit drop absent: symmetric tent
  const BcPair1D zero{{BcKind::dirichlet, 0.0}, {BcKind::dirichlet, 0.0}};
  const double a2 = 1e-4;
  const auto sol = solve_multidomain(0.0, 0.0, pulse_spec(a2), RectPulseSource{0.5, a2, 1000.0},
                                     zero);
  // peak value S/4 up to an O(a2) flattening, slopes +-S/2
  CHECK(sol.eval(0.5, 0) == doctest::Approx(250.0).epsilon(3e-4));
  CHECK(sol.eval(0.25, 1) == doctest::Approx(500.0).epsilon(1e-6));
  CHECK(sol.eval(0.75, 1) == doctest::Approx(-500.0).epsilon(1e-6));
  CHECK(sol.eval(0.2, 0) == doctest::Approx(sol.eval(0.8, 0)).epsilon(1e-6));
}

TEST_CASE("outer Neumann condition") {
  // Pe = Da = 0, f = 0, phi(0) = 1, phi'(1) = 1: the line 1 + x
  MultiDomainSpec spec;
  spec.breakpoints = {0.0, 0.4, 1.0};
  spec.schemes = {SubdomainScheme{0, 4, ParticularMethod::fccm}};
  const BcPair1D bc{{BcKind::dirichlet, 1.0}, {BcKind::neumann, 1.0}};
  const auto sol = solve_multidomain(0, 0, spec, PolynomialSource{{}}, bc);
  CHECK(sol.eval(0.4, 0) == doctest::Approx(1.4).epsilon(1e-11));
  CHECK(sol.eval(1.0, 0) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(sol.eval(0.7, 1) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("spec validation") {
  MultiDomainSpec bad;
  bad.breakpoints = {0.0, 1.0};
  CHECK_THROWS_AS(solve_multidomain(1, 1, bad, PolynomialSource{{}}, kUnitDrop), Error);
  bad.breakpoints = {0.0, 0.6, 0.4, 1.0};
  CHECK_THROWS_AS(solve_multidomain(1, 1, bad, PolynomialSource{{}}, kUnitDrop), Error);

  // delta sitting exactly on a breakpoint is rejected
  MultiDomainSpec spec;
  spec.breakpoints = {0.0, 0.5, 1.0};
  spec.schemes = {SubdomainScheme{0, 4, ParticularMethod::fccm}};
  CHECK_THROWS_AS(solve_multidomain(3, 90, spec, DiracDeltaSource{0.5, 1.0}, kUnitDrop),
                  SourceError);
}

TEST_CASE("eval outside the global interval") {
  MultiDomainSpec spec;
  spec.breakpoints = {0.0, 0.5, 1.0};
  spec.schemes = {SubdomainScheme{0, 4, ParticularMethod::fccm}};
  const auto sol = solve_multidomain(3, 90, spec, PolynomialSource{{}}, kUnitDrop);
  CHECK_THROWS_AS(sol.eval(1.5, 0), DomainError);
  CHECK_NOTHROW(sol.eval(1.0, 0));
  CHECK_NOTHROW(sol.eval(0.0, 0));
}
