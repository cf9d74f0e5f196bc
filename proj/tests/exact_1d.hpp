#pragma once

// Implementation-independent closed-form solutions of
//   Pe phi' - phi'' - Pe Da phi = f,  f a polynomial in (x/a)^j of degree <= 3,
// built from undetermined coefficients in the plain monomial basis plus the
// textbook homogeneous pair for the root regime. Used as the oracle the
// series solver is checked against; requires Pe*Da != 0.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fsm/cdr1d.hpp"

namespace testutil {

class Exact1D {
 public:
  static Exact1D build(const fsm::CdrParams1D& p, const std::vector<double>& coeffs,
                       const fsm::BcPair1D& bc) {
    if (p.Pe * p.Da == 0.0) throw std::invalid_argument("oracle needs Pe*Da != 0");
    if (coeffs.size() > 4) throw std::invalid_argument("oracle supports degree <= 3");
    Exact1D e;
    e.p_ = p;
    const long double peda = static_cast<long double>(p.Pe) * p.Da;
    // particular polynomial, matching monomial degrees from the top
    std::array<long double, 4> c{};
    for (size_t j = 0; j < coeffs.size(); ++j) {
      c[j] = static_cast<long double>(coeffs[j]) / std::pow(static_cast<long double>(p.a), j);
    }
    for (int k = 3; k >= 0; --k) {
      long double s = -c[static_cast<size_t>(k)];
      if (k + 1 <= 3) s += p.Pe * (k + 1) * e.d_[static_cast<size_t>(k + 1)];
      if (k + 2 <= 3) {
        s -= static_cast<long double>(k + 2) * (k + 1) * e.d_[static_cast<size_t>(k + 2)];
      }
      e.d_[static_cast<size_t>(k)] = s / peda;
    }
    // homogeneous pair and boundary system
    const long double disc = static_cast<long double>(p.Pe) * p.Pe - 4.0L * peda;
    if (disc > 0) {
      e.kind_ = Kind::exponential;
      const long double r = std::sqrt(disc);
      e.eta1_ = 0.5L * (p.Pe + r);
      e.eta2_ = 0.5L * (p.Pe - r);
      e.anchor1_ = e.eta1_ > 0 ? p.a : -p.a;
      e.anchor2_ = e.eta2_ > 0 ? p.a : -p.a;
    } else if (disc < 0) {
      e.kind_ = Kind::oscillatory;
      e.alpha_ = 0.5L * p.Pe;
      e.omega_ = 0.5L * std::sqrt(-disc);
    } else {
      e.kind_ = Kind::critical;
      e.alpha_ = 0.5L * p.Pe;
    }
    long double m[2][2], rhs[2];
    const fsm::BoundaryCondition1D conds[2] = {bc.left, bc.right};
    for (int side = 0; side < 2; ++side) {
      const long double xs = side == 0 ? -p.a : p.a;
      const int k = conds[side].kind == fsm::BcKind::dirichlet ? 0 : 1;
      m[side][0] = e.h1(xs, k);
      m[side][1] = e.h2(xs, k);
      rhs[side] = conds[side].value - e.poly(xs, k);
    }
    const long double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    e.A_ = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    e.B_ = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det;
    return e;
  }

  double eval(double x, int k) const {
    return static_cast<double>(poly(x, k) + A_ * h1(x, k) + B_ * h2(x, k));
  }

 private:
  enum class Kind { exponential, oscillatory, critical };

  long double poly(long double x, int k) const {
    long double s = 0.0L;
    for (int j = k; j <= 3; ++j) {
      long double f = 1.0L;
      for (int i = 0; i < k; ++i) f *= j - i;
      s += d_[static_cast<size_t>(j)] * f * std::pow(x, j - k);
    }
    return s;
  }
  long double h1(long double x, int k) const {
    switch (kind_) {
      case Kind::exponential:
        return std::pow(eta1_, k) * std::exp(eta1_ * (x - anchor1_));
      case Kind::oscillatory:
        return osc(x, k, false);
      case Kind::critical:
        return std::pow(alpha_, k) * std::exp(alpha_ * x);
    }
    return 0.0L;
  }
  long double h2(long double x, int k) const {
    switch (kind_) {
      case Kind::exponential:
        return std::pow(eta2_, k) * std::exp(eta2_ * (x - anchor2_));
      case Kind::oscillatory:
        return osc(x, k, true);
      case Kind::critical: {
        // x e^{alpha x} derivatives
        const long double e = std::exp(alpha_ * x);
        if (k == 0) return x * e;
        if (k == 1) return (1 + alpha_ * x) * e;
        return (2 * alpha_ + alpha_ * alpha_ * x) * e;
      }
    }
    return 0.0L;
  }
  long double osc(long double x, int k, bool sine) const {
    // derivatives of e^{alpha x} cos(omega x) / sin(omega x)
    const std::complex<long double> w(alpha_, omega_);
    std::complex<long double> z = std::exp(std::complex<long double>(alpha_ * x, omega_ * x));
    for (int i = 0; i < k; ++i) z *= w;
    return sine ? z.imag() : z.real();
  }

  fsm::CdrParams1D p_;
  std::array<long double, 4> d_{};
  Kind kind_ = Kind::exponential;
  long double eta1_ = 0, eta2_ = 0, anchor1_ = 0, anchor2_ = 0;
  long double alpha_ = 0, omega_ = 0;
  long double A_ = 0, B_ = 0;
};

}  // namespace testutil
