#include "fsm/source.hpp"

#include <cmath>
#include <numbers>

namespace fsm {

namespace {

constexpr int kMaxPolynomialDegree = 64;

// Int_{-1}^{1} t^j cos(m pi t) dt and the sine analogue, by the stable
// boundary-term recurrence (sin(m pi) = 0 kills the cosine boundary term).
void monomial_trig_integrals(int degree, int m, std::vector<long double>& ic,
                             std::vector<long double>& is) {
  ic.assign(static_cast<size_t>(degree) + 1, 0.0L);
  is.assign(static_cast<size_t>(degree) + 1, 0.0L);
  if (m == 0) {
    for (int j = 0; j <= degree; ++j) ic[static_cast<size_t>(j)] = (j % 2 == 0) ? 2.0L / (j + 1) : 0.0L;
    return;
  }
  const long double w = static_cast<long double>(m) * std::numbers::pi_v<long double>;
  const long double cos_w = (m % 2 == 0) ? 1.0L : -1.0L;
  for (int j = 1; j <= degree; ++j) {
    const auto ju = static_cast<size_t>(j);
    ic[ju] = -(j / w) * is[ju - 1];
    const long double boundary = (j % 2 == 0) ? 0.0L : -(2.0L * cos_w) / w;
    is[ju] = boundary + (j / w) * ic[ju - 1];
  }
}

TrigSeries1D polynomial_coeffs(const PolynomialSource& s, double a, int modes) {
  const int degree = static_cast<int>(s.coeffs.size()) - 1;
  TrigSeries1D out(a, modes);
  if (degree < 0) return out;
  std::vector<long double> ic, is;
  for (int m = 0; m <= modes; ++m) {
    monomial_trig_integrals(degree, m, ic, is);
    long double v1 = 0.0L, v2 = 0.0L;
    for (int j = 0; j <= degree; ++j) {
      v1 += static_cast<long double>(s.coeffs[static_cast<size_t>(j)]) * ic[static_cast<size_t>(j)];
      v2 += static_cast<long double>(s.coeffs[static_cast<size_t>(j)]) * is[static_cast<size_t>(j)];
    }
    out.set_cos(m, static_cast<double>(v1));
    if (m >= 1) out.set_sin(m, static_cast<double>(v2));
  }
  return out;
}

TrigSeries1D delta_coeffs(const DiracDeltaSource& s, double a, int modes) {
  TrigSeries1D out(a, modes);
  for (int m = 0; m <= modes; ++m) {
    const double am = m * M_PI / a;
    out.set_cos(m, s.strength / a * std::cos(am * s.position));
    if (m >= 1) out.set_sin(m, s.strength / a * std::sin(am * s.position));
  }
  return out;
}

TrigSeries1D pulse_coeffs(const RectPulseSource& s, double a, int modes) {
  TrigSeries1D out(a, modes);
  out.set_cos(0, s.area / a);
  for (int m = 1; m <= modes; ++m) {
    const double am = m * M_PI / a;
    const double kernel = s.area * std::sin(am * s.half_width) / (a * am * s.half_width);
    out.set_cos(m, kernel * std::cos(am * s.center));
    out.set_sin(m, kernel * std::sin(am * s.center));
  }
  return out;
}

// Composite Simpson pass with `panels` panels (2*panels subintervals).
void simpson_projection_pass(const std::function<double(double)>& g, double h, int modes,
                             long panels, std::vector<double>& vc, std::vector<double>& vs) {
  const long n = 2 * panels;
  const double dx = 2.0 * h / static_cast<double>(n);
  vc.assign(static_cast<size_t>(modes) + 1, 0.0);
  vs.assign(static_cast<size_t>(modes) + 1, 0.0);
  std::vector<double> xs(static_cast<size_t>(n) + 1), gs(static_cast<size_t>(n) + 1),
      ws(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double x = -h + dx * static_cast<double>(i);
    xs[static_cast<size_t>(i)] = x;
    gs[static_cast<size_t>(i)] = g(x);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    ws[static_cast<size_t>(i)] = w * dx / 3.0;
  }
  for (int m = 0; m <= modes; ++m) {
    const double am = m * M_PI / h;
    double sc = 0.0, ss = 0.0;
    for (long i = 0; i <= n; ++i) {
      const auto iu = static_cast<size_t>(i);
      const double wg = ws[iu] * gs[iu];
      sc += wg * std::cos(am * xs[iu]);
      if (m >= 1) ss += wg * std::sin(am * xs[iu]);
    }
    vc[static_cast<size_t>(m)] = sc / h;
    vs[static_cast<size_t>(m)] = ss / h;
  }
}

}  // namespace

ProjectionResult project_fourier(const std::function<double(double)>& g, double h, int modes,
                                 int base_panels, int max_doublings) {
  ProjectionResult r;
  std::vector<double> vc_prev, vs_prev;
  long panels = base_panels;
  simpson_projection_pass(g, h, modes, panels, vc_prev, vs_prev);
  for (int pass = 0; pass < max_doublings; ++pass) {
    panels *= 2;
    std::vector<double> vc, vs;
    simpson_projection_pass(g, h, modes, panels, vc, vs);
    double diff = 0.0, scale = 1.0;
    for (size_t i = 0; i < vc.size(); ++i) {
      diff = std::max(diff, std::abs(vc[i] - vc_prev[i]));
      diff = std::max(diff, std::abs(vs[i] - vs_prev[i]));
      scale = std::max(scale, std::abs(vc[i]));
      scale = std::max(scale, std::abs(vs[i]));
    }
    vc_prev = std::move(vc);
    vs_prev = std::move(vs);
    r.error_estimate = diff / scale;
    if (r.error_estimate < 1e-10) {
      r.converged = true;
      r.cos_coeffs = std::move(vc_prev);
      vs_prev.erase(vs_prev.begin());
      r.sin_coeffs = std::move(vs_prev);
      return r;
    }
  }
  r.converged = false;
  r.cos_coeffs = std::move(vc_prev);
  vs_prev.erase(vs_prev.begin());
  r.sin_coeffs = std::move(vs_prev);
  return r;
}

void validate_source(const SourceModel& s, double a) {
  if (const auto* p = std::get_if<PolynomialSource>(&s)) {
    if (static_cast<int>(p->coeffs.size()) - 1 > kMaxPolynomialDegree) {
      throw SourceError("polynomial source degree exceeds 64");
    }
  } else if (const auto* d = std::get_if<DiracDeltaSource>(&s)) {
    if (!(std::abs(d->position) < a)) {
      throw SourceError("Dirac delta position must lie strictly inside the interval");
    }
  } else if (const auto* r = std::get_if<RectPulseSource>(&s)) {
    if (r->half_width <= 0.0) throw SourceError("rectangular pulse needs positive half width");
    if (std::abs(r->center) + r->half_width > a * (1.0 + 1e-12)) {
      throw SourceError("rectangular pulse support must lie inside the interval");
    }
  } else if (const auto* f = std::get_if<SampledSource>(&s)) {
    if (!f->f) throw SourceError("sampled source has no callable");
  }
}

bool pointwise_evaluable(const SourceModel& s) {
  return !std::holds_alternative<DiracDeltaSource>(s);
}

double eval_source(const SourceModel& s, double x, double a) {
  if (const auto* p = std::get_if<PolynomialSource>(&s)) {
    const double t = x / a;
    double v = 0.0;
    for (size_t j = p->coeffs.size(); j-- > 0;) v = v * t + p->coeffs[j];
    return v;
  }
  if (const auto* r = std::get_if<RectPulseSource>(&s)) {
    return std::abs(x - r->center) <= r->half_width ? r->area / (2.0 * r->half_width) : 0.0;
  }
  if (const auto* f = std::get_if<SampledSource>(&s)) {
    return f->f(x);
  }
  throw SourceError("Dirac delta source is not pointwise evaluable");
}

TrigSeries1D fourier_coeffs(const SourceModel& s, double a, int modes) {
  validate_source(s, a);
  if (const auto* p = std::get_if<PolynomialSource>(&s)) return polynomial_coeffs(*p, a, modes);
  if (const auto* d = std::get_if<DiracDeltaSource>(&s)) return delta_coeffs(*d, a, modes);
  if (const auto* r = std::get_if<RectPulseSource>(&s)) return pulse_coeffs(*r, a, modes);
  const auto& f = std::get<SampledSource>(s);
  auto pr = project_fourier(f.f, a, modes, 16 * (modes + 1));
  if (!pr.converged) {
    throw QuadratureError("source quadrature did not converge", pr.error_estimate);
  }
  TrigSeries1D out(a, modes);
  for (int m = 0; m <= modes; ++m) out.set_cos(m, pr.cos_coeffs[static_cast<size_t>(m)]);
  for (int m = 1; m <= modes; ++m) out.set_sin(m, pr.sin_coeffs[static_cast<size_t>(m - 1)]);
  return out;
}

namespace {

// Coefficients of sum_j c_j (s t + d)^j, i.e. rebase of a unit-interval
// polynomial under an affine change of the normalized coordinate.
std::vector<double> rebase_polynomial(const std::vector<double>& c, double s, double d) {
  std::vector<long double> out(c.size(), 0.0L);
  std::vector<long double> power{1.0L};  // (s t + d)^j, built incrementally
  for (size_t j = 0; j < c.size(); ++j) {
    for (size_t k = 0; k < power.size(); ++k) out[k] += c[j] * power[k];
    if (j + 1 < c.size()) {
      std::vector<long double> next(power.size() + 1, 0.0L);
      for (size_t k = 0; k < power.size(); ++k) {
        next[k] += power[k] * d;
        next[k + 1] += power[k] * s;
      }
      power = std::move(next);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

SourceModel restrict_source(const SourceModel& s, double global_lo, double global_hi, double lo,
                            double hi) {
  const double big_a = 0.5 * (global_hi - global_lo);
  const double big_c = 0.5 * (global_hi + global_lo);
  const double sub_a = 0.5 * (hi - lo);
  const double sub_c = 0.5 * (hi + lo);
  if (const auto* p = std::get_if<PolynomialSource>(&s)) {
    const double scale = sub_a / big_a;
    const double shift = (sub_c - big_c) / big_a;
    return PolynomialSource{rebase_polynomial(p->coeffs, scale, shift)};
  }
  if (const auto* d = std::get_if<DiracDeltaSource>(&s)) {
    if (d->position == lo || d->position == hi) {
      throw SourceError("Dirac delta sits on a subdomain breakpoint");
    }
    if (d->position < lo || d->position > hi) return PolynomialSource{{}};
    return DiracDeltaSource{d->position - sub_c, d->strength};
  }
  if (const auto* r = std::get_if<RectPulseSource>(&s)) {
    const double u = std::max(lo, r->center - r->half_width);
    const double v = std::min(hi, r->center + r->half_width);
    if (v <= u) return PolynomialSource{{}};
    const double height = r->area / (2.0 * r->half_width);
    return RectPulseSource{0.5 * (u + v) - sub_c, 0.5 * (v - u), height * (v - u)};
  }
  const auto& f = std::get<SampledSource>(s);
  auto fn = f.f;
  return SampledSource{[fn, sub_c](double x) { return fn(x + sub_c); }};
}

SourceModel center_source(const SourceModel& s, double lo, double hi) {
  const double c = 0.5 * (hi + lo);
  if (std::holds_alternative<PolynomialSource>(s)) return s;
  if (const auto* d = std::get_if<DiracDeltaSource>(&s)) {
    return DiracDeltaSource{d->position - c, d->strength};
  }
  if (const auto* r = std::get_if<RectPulseSource>(&s)) {
    return RectPulseSource{r->center - c, r->half_width, r->area};
  }
  const auto& f = std::get<SampledSource>(s);
  auto fn = f.f;
  return SampledSource{[fn, c](double x) { return fn(x + c); }};
}

// ---------------------------------------------------------------------------

double eval_source_2d(const SourceModel2D& s, double x1, double x2, double a, double b) {
  if (std::holds_alternative<ZeroSource2D>(s)) return 0.0;
  if (const auto* c = std::get_if<ConstantSource2D>(&s)) return c->value;
  if (const auto* p = std::get_if<SeparableSource2D>(&s)) {
    return eval_source(p->g, x1, a) * eval_source(p->h, x2, b);
  }
  return std::get<SampledSource2D>(s).f(x1, x2);
}

namespace {

TrigSeries2D sampled_coeffs_2d(const SampledSource2D& s, double a, double b, int m_modes,
                               int n_modes) {
  // Tensor Simpson with the 1D doubling rule applied to the full tensor.
  const int base = 16 * (std::max(m_modes, n_modes) + 1);
  TrigSeries2D prev(a, b, m_modes, n_modes);
  double estimate = 0.0;
  long panels = base;
  for (int pass = 0; pass <= 6; ++pass) {
    const long n = 2 * panels;
    const double dx = 2.0 * a / static_cast<double>(n);
    const double dy = 2.0 * b / static_cast<double>(n);
    TrigSeries2D cur(a, b, m_modes, n_modes);
    // Row-wise projection in x2, then projection of the row coefficients in x1.
    std::vector<std::vector<double>> rowc(static_cast<size_t>(n) + 1),
        rows(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
      const double x1 = -a + dx * static_cast<double>(i);
      std::vector<double> vc(static_cast<size_t>(n_modes) + 1, 0.0),
          vs(static_cast<size_t>(n_modes) + 1, 0.0);
      for (long j = 0; j <= n; ++j) {
        const double x2 = -b + dy * static_cast<double>(j);
        const double w = ((j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0)) * dy / 3.0;
        const double g = s.f(x1, x2) * w / b;
        for (int k = 0; k <= n_modes; ++k) {
          const double bk = k * M_PI / b;
          vc[static_cast<size_t>(k)] += g * std::cos(bk * x2);
          if (k >= 1) vs[static_cast<size_t>(k)] += g * std::sin(bk * x2);
        }
      }
      rowc[static_cast<size_t>(i)] = std::move(vc);
      rows[static_cast<size_t>(i)] = std::move(vs);
    }
    for (int m = 0; m <= m_modes; ++m) {
      const double am = m * M_PI / a;
      for (int k = 0; k <= n_modes; ++k) {
        double cc = 0.0, cs = 0.0, sc = 0.0, ss = 0.0;
        for (long i = 0; i <= n; ++i) {
          const double x1 = -a + dx * static_cast<double>(i);
          const double w = ((i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0)) * dx / 3.0 / a;
          const double cm = std::cos(am * x1), sm = std::sin(am * x1);
          const auto iu = static_cast<size_t>(i);
          cc += w * cm * rowc[iu][static_cast<size_t>(k)];
          sc += w * sm * rowc[iu][static_cast<size_t>(k)];
          if (k >= 1) {
            cs += w * cm * rows[iu][static_cast<size_t>(k)];
            ss += w * sm * rows[iu][static_cast<size_t>(k)];
          }
        }
        cur.set_coeff(m, k, Parity::cc, cc);
        if (k >= 1) cur.set_coeff(m, k, Parity::cs, cs);
        if (m >= 1) cur.set_coeff(m, k, Parity::sc, sc);
        if (m >= 1 && k >= 1) cur.set_coeff(m, k, Parity::ss, ss);
      }
    }
    if (pass > 0) {
      double diff = 0.0, scale = 1.0;
      for (size_t i = 0; i < cur.flat().size(); ++i) {
        diff = std::max(diff, std::abs(cur.flat()[i] - prev.flat()[i]));
        scale = std::max(scale, std::abs(cur.flat()[i]));
      }
      estimate = diff / scale;
      if (estimate < 1e-10) return cur;
    }
    prev = std::move(cur);
    panels *= 2;
  }
  throw QuadratureError("2D source quadrature did not converge", estimate);
}

}  // namespace

TrigSeries2D fourier_coeffs_2d(const SourceModel2D& s, double a, double b, int m_modes,
                               int n_modes) {
  TrigSeries2D out(a, b, m_modes, n_modes);
  if (std::holds_alternative<ZeroSource2D>(s)) return out;
  if (const auto* c = std::get_if<ConstantSource2D>(&s)) {
    out.set_coeff(0, 0, Parity::cc, 4.0 * c->value);
    return out;
  }
  if (const auto* p = std::get_if<SeparableSource2D>(&s)) {
    const TrigSeries1D gx = fourier_coeffs(p->g, a, m_modes);
    const TrigSeries1D hy = fourier_coeffs(p->h, b, n_modes);
    for (int m = 0; m <= m_modes; ++m) {
      for (int n = 0; n <= n_modes; ++n) {
        out.set_coeff(m, n, Parity::cc, gx.cos_coeff(m) * hy.cos_coeff(n));
        if (n >= 1) out.set_coeff(m, n, Parity::cs, gx.cos_coeff(m) * hy.sin_coeff(n));
        if (m >= 1) out.set_coeff(m, n, Parity::sc, gx.sin_coeff(m) * hy.cos_coeff(n));
        if (m >= 1 && n >= 1) out.set_coeff(m, n, Parity::ss, gx.sin_coeff(m) * hy.sin_coeff(n));
      }
    }
    return out;
  }
  return sampled_coeffs_2d(std::get<SampledSource2D>(s), a, b, m_modes, n_modes);
}

}  // namespace fsm
