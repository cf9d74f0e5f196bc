#include "fsm/series.hpp"

#include <cmath>
#include <cstdlib>

namespace fsm {

namespace {

void check_inside(double x, double a, const char* who) {
  if (std::abs(x) - a > 1e-12 * a) {
    throw DomainError(std::string(who) + ": point outside [-a, a]");
  }
}

// d^k/dx^k of cos(w x) and sin(w x), k <= 2.
struct TrigDerivs {
  double c, s;
};

TrigDerivs trig_derivs(double w, double x, int k) {
  const double c = std::cos(w * x);
  const double s = std::sin(w * x);
  switch (k) {
    case 0:
      return {c, s};
    case 1:
      return {-w * s, w * c};
    case 2:
      return {-w * w * c, -w * w * s};
    default:
      throw DomainError("series eval: derivative order must be <= 2");
  }
}

}  // namespace

TrigSeries1D::TrigSeries1D(double half_length, int modes) : a_(half_length) {
  if (half_length <= 0.0) throw DomainError("TrigSeries1D: half length must be positive");
  if (modes < 0) throw DomainError("TrigSeries1D: negative mode count");
  cos_.assign(static_cast<size_t>(modes) + 1, 0.0);
  sin_.assign(static_cast<size_t>(modes), 0.0);
}

double TrigSeries1D::eval(double x, int deriv) const {
  check_inside(x, a_, "TrigSeries1D");
  if (deriv < 0 || deriv > 2) throw DomainError("TrigSeries1D: derivative order must be in 0..2");
  const double pi_over_a = M_PI / a_;
  double sum = (deriv == 0) ? 0.5 * cos_[0] : 0.0;
  for (int m = 1; m <= modes(); ++m) {
    const double am = m * pi_over_a;
    const auto [dc, ds] = trig_derivs(am, x, deriv);
    sum += cos_[static_cast<size_t>(m)] * dc + sin_[static_cast<size_t>(m - 1)] * ds;
  }
  return sum;
}

double TrigSeries1D::coeff_max() const {
  double mx = 0.0;
  for (double v : cos_) mx = std::max(mx, std::abs(v));
  for (double v : sin_) mx = std::max(mx, std::abs(v));
  return mx;
}

TrigSeries2D::TrigSeries2D(double a, double b, int m_modes, int n_modes)
    : a_(a), b_(b), m_(m_modes), n_(n_modes) {
  if (a <= 0.0 || b <= 0.0) throw DomainError("TrigSeries2D: half lengths must be positive");
  if (m_modes < 0 || n_modes < 0) throw DomainError("TrigSeries2D: negative mode count");
  c_.assign(static_cast<size_t>(m_ + 1) * static_cast<size_t>(n_ + 1) * 4, 0.0);
}

size_t TrigSeries2D::idx(int m, int n, Parity p) const {
  return (static_cast<size_t>(m) * static_cast<size_t>(n_ + 1) + static_cast<size_t>(n)) * 4 +
         static_cast<size_t>(p);
}

bool TrigSeries2D::forbidden(int m, int n, Parity p) {
  const bool x1_sin = (p == Parity::sc || p == Parity::ss);
  const bool x2_sin = (p == Parity::cs || p == Parity::ss);
  return (m == 0 && x1_sin) || (n == 0 && x2_sin);
}

double TrigSeries2D::coeff(int m, int n, Parity p) const {
  return c_[idx(m, n, p)];
}

void TrigSeries2D::set_coeff(int m, int n, Parity p, double v) {
  if (forbidden(m, n, p) && v != 0.0) {
    throw DomainError("TrigSeries2D: sine parity has no m=0 / n=0 entry");
  }
  c_[idx(m, n, p)] = v;
}

void TrigSeries2D::assign_flat(const std::vector<double>& values) {
  if (values.size() != c_.size()) throw DomainError("TrigSeries2D: flat size mismatch");
  for (int m = 0; m <= m_; ++m)
    for (int n = 0; n <= n_; ++n)
      for (int p = 0; p < 4; ++p) {
        const size_t k = idx(m, n, static_cast<Parity>(p));
        if (forbidden(m, n, static_cast<Parity>(p)) && values[k] != 0.0) {
          throw DomainError("TrigSeries2D: sine parity has no m=0 / n=0 entry");
        }
      }
  c_ = values;
}

double TrigSeries2D::eval(double x1, double x2, int k1, int k2) const {
  check_inside(x1, a_, "TrigSeries2D");
  check_inside(x2, b_, "TrigSeries2D");
  if (k1 < 0 || k2 < 0 || k1 + k2 > 2) {
    throw DomainError("TrigSeries2D: derivative orders must satisfy k1 + k2 <= 2");
  }
  const double pa = M_PI / a_;
  const double pb = M_PI / b_;
  // per-axis derivative tables keep the double loop free of transcendentals
  std::vector<TrigDerivs> dm(static_cast<size_t>(m_) + 1), dn(static_cast<size_t>(n_) + 1);
  for (int m = 0; m <= m_; ++m) dm[static_cast<size_t>(m)] = trig_derivs(m * pa, x1, k1);
  for (int n = 0; n <= n_; ++n) dn[static_cast<size_t>(n)] = trig_derivs(n * pb, x2, k2);
  double sum = 0.0;
  for (int m = 0; m <= m_; ++m) {
    const double mu_m = (m == 0) ? 0.5 : 1.0;
    const auto& tm = dm[static_cast<size_t>(m)];
    for (int n = 0; n <= n_; ++n) {
      const double mu = mu_m * ((n == 0) ? 0.5 : 1.0);
      const auto& tn = dn[static_cast<size_t>(n)];
      const size_t base = idx(m, n, Parity::cc);
      sum += mu * (c_[base + 0] * tm.c * tn.c + c_[base + 1] * tm.c * tn.s +
                   c_[base + 2] * tm.s * tn.c + c_[base + 3] * tm.s * tn.s);
    }
  }
  return sum;
}

double TrigSeries2D::coeff_max() const {
  double mx = 0.0;
  for (double v : c_) mx = std::max(mx, std::abs(v));
  return mx;
}

}  // namespace fsm
