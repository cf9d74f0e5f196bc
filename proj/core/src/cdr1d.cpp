#include "fsm/cdr1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace fsm {

namespace {

constexpr double kConditionLimit = 1e12;

double clamp_scale(double s) { return s > 1e-280 ? s : 1.0; }

}  // namespace

RootData classify_regime(const CdrParams1D& p) {
  RootData r;
  const double disc = p.Pe * p.Pe - 4.0 * p.Pe * p.Da;
  const double tol = 1e-12 * std::max(1.0, p.Pe * p.Pe);
  r.alpha10 = -0.5 * p.Pe;
  if (std::abs(disc) <= tol) {
    r.regime = Regime::double_real;
    r.eta1 = r.eta2 = 0.5 * p.Pe;
  } else if (disc > 0.0) {
    r.regime = Regime::distinct_real;
    r.alpha30 = 0.5 * std::sqrt(disc);
    r.eta1 = -r.alpha10 + r.alpha30;
    r.eta2 = -r.alpha10 - r.alpha30;
  } else {
    r.regime = Regime::complex_pair;
    r.alpha20 = 0.5 * std::sqrt(-disc);
    r.eta1 = std::complex<double>(-r.alpha10, -r.alpha20);
    r.eta2 = std::complex<double>(-r.alpha10, r.alpha20);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Homogeneous basis

HomogeneousBasis1D::HomogeneousBasis1D(const CdrParams1D& p) : a_(p.a) {
  roots_ = classify_regime(p);
  const double a10 = roots_.alpha10;
  switch (roots_.regime) {
    case Regime::distinct_real:
      fn_[0].c = -(a10 + roots_.alpha30);
      fn_[1].c = -(a10 - roots_.alpha30);
      break;
    case Regime::complex_pair:
      fn_[0].c = fn_[1].c = -a10;
      fn_[0].trig = true;
      fn_[0].d = roots_.alpha20;
      fn_[1].trig = true;
      fn_[1].d = -roots_.alpha20;
      fn_[1].e = roots_.alpha20 * a_;
      break;
    case Regime::double_real:
      fn_[0].c = fn_[1].c = -a10;
      fn_[1].u = 0.0;
      fn_[1].v = 1.0;
      break;
  }
  for (int l = 0; l < 2; ++l) {
    Fn& f = fn_[static_cast<size_t>(l)];
    f.x0 = (f.c > 0.0) ? a_ : (f.c < 0.0 ? -a_ : 0.0);
    const double s = clamp_scale(
        std::max(std::abs(eval_fn(f, -a_, 0)), std::abs(eval_fn(f, a_, 0))));
    f.amp = 1.0 / s;
    scale_[static_cast<size_t>(l)] = s;
  }
}

double HomogeneousBasis1D::eval_fn(const Fn& f, double x, int deriv) {
  // F = amp e^{c(x-x0)} (A(x) T + B(x) That), T = sin(dx+e) or 1.
  // d/dx maps (A, B) -> (cA + A' - dB, cB + B' + dA).
  double a0 = f.u, a1 = f.v, b0 = 0.0, b1 = 0.0;
  for (int k = 0; k < deriv; ++k) {
    const double na0 = f.c * a0 + a1 - f.d * b0;
    const double na1 = f.c * a1 - f.d * b1;
    const double nb0 = f.c * b0 + b1 + f.d * a0;
    const double nb1 = f.c * b1 + f.d * a1;
    a0 = na0;
    a1 = na1;
    b0 = nb0;
    b1 = nb1;
  }
  const double expo = f.amp * std::exp(f.c * (x - f.x0));
  if (!f.trig) return expo * (a0 + a1 * x);
  const double th = f.d * x + f.e;
  return expo * ((a0 + a1 * x) * std::sin(th) + (b0 + b1 * x) * std::cos(th));
}

double HomogeneousBasis1D::value(int which, double x, int deriv) const {
  if (deriv < 0 || deriv > 2) throw DomainError("HomogeneousBasis1D: derivative order 0..2");
  return eval_fn(fn_[static_cast<size_t>(which)], x, deriv);
}

// ---------------------------------------------------------------------------
// Supplementary polynomial machinery

double ShiftedPoly::eval(double x, int deriv) const {
  if (coef.empty()) return 0.0;
  const double t = x / a;
  long double sum = 0.0L;
  for (size_t j = 0; j < coef.size(); ++j) {
    const int pw = static_cast<int>(j) + shift;
    if (pw < deriv) continue;
    long double factor = 1.0L;
    for (int k = 0; k < deriv; ++k) factor *= pw - k;
    sum += coef[j] * factor * std::pow(static_cast<long double>(t), pw - deriv);
  }
  const long double chain = std::pow(static_cast<long double>(1.0 / a), deriv);
  return static_cast<double>(sum * chain);
}

int monomial_shift(const CdrParams1D& p) {
  if (p.Pe == 0.0) return 2;
  if (p.Da == 0.0) return 1;
  return 0;
}

std::vector<double> interpolate_source(const SourceModel& f, int order, double a) {
  if (order < 1) throw SourceError("interpolation order must be >= 1");
  if (!pointwise_evaluable(f)) {
    throw SourceError("Dirac delta source cannot be interpolated; use order 0");
  }
  const int n = order + 1;
  // Vandermonde rows at the uniform nodes t_i = -1 + 2i/order (endpoints included).
  std::vector<std::vector<long double>> m(static_cast<size_t>(n),
                                          std::vector<long double>(static_cast<size_t>(n) + 1));
  for (int i = 0; i < n; ++i) {
    const long double t = -1.0L + 2.0L * i / order;
    long double pw = 1.0L;
    for (int j = 0; j < n; ++j) {
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = pw;
      pw *= t;
    }
    m[static_cast<size_t>(i)][static_cast<size_t>(n)] =
        eval_source(f, a * static_cast<double>(t), a);
  }
  // Gaussian elimination with partial pivoting in extended precision.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::abs(m[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
        piv = r;
    }
    std::swap(m[static_cast<size_t>(col)], m[static_cast<size_t>(piv)]);
    const long double diag = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
    if (diag == 0.0L) throw Error("interpolation nodes produced a singular Vandermonde system");
    for (int r = col + 1; r < n; ++r) {
      const long double fac = m[static_cast<size_t>(r)][static_cast<size_t>(col)] / diag;
      if (fac == 0.0L) continue;
      for (int j = col; j <= n; ++j) {
        m[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            fac * m[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
  }
  std::vector<long double> h(static_cast<size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    long double s = m[static_cast<size_t>(r)][static_cast<size_t>(n)];
    for (int j = r + 1; j < n; ++j) {
      s -= m[static_cast<size_t>(r)][static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
    }
    h[static_cast<size_t>(r)] = s / m[static_cast<size_t>(r)][static_cast<size_t>(r)];
  }
  return {h.begin(), h.end()};
}

ShiftedPoly solve_supplementary(const CdrParams1D& p, const std::vector<double>& fs_coef) {
  ShiftedPoly out;
  out.a = p.a;
  out.shift = monomial_shift(p);
  if (fs_coef.empty()) return out;
  const int n = static_cast<int>(fs_coef.size());
  std::vector<long double> g(static_cast<size_t>(n), 0.0L);
  const long double a = p.a;
  const long double pe = p.Pe;
  const long double peda = static_cast<long double>(p.Pe) * p.Da;
  auto c = [&](int i) { return static_cast<long double>(fs_coef[static_cast<size_t>(i)]); };
  switch (out.shift) {
    case 0:
      for (int i = n - 1; i >= 0; --i) {
        long double s = c(i);
        if (i + 1 < n) s -= pe * (i + 1) / a * g[static_cast<size_t>(i + 1)];
        if (i + 2 < n) {
          s += static_cast<long double>(i + 1) * (i + 2) / (a * a) * g[static_cast<size_t>(i + 2)];
        }
        g[static_cast<size_t>(i)] = s / (-peda);
      }
      break;
    case 1:
      for (int i = n - 1; i >= 0; --i) {
        long double s = c(i);
        if (i + 1 < n) {
          s += static_cast<long double>(i + 1) * (i + 2) / (a * a) * g[static_cast<size_t>(i + 1)];
        }
        g[static_cast<size_t>(i)] = s * a / (pe * (i + 1));
      }
      break;
    case 2:
      for (int i = 0; i < n; ++i) {
        g[static_cast<size_t>(i)] = -c(i) * a * a / (static_cast<long double>(i + 1) * (i + 2));
      }
      break;
  }
  out.coef.assign(g.begin(), g.end());
  return out;
}

// ---------------------------------------------------------------------------
// Particular solutions

TrigSeries1D particular_fccm(const CdrParams1D& p, const TrigSeries1D& fp) {
  const int modes = fp.modes();
  const double a = fp.half_length();
  TrigSeries1D q0(a, modes);
  const double peda = p.Pe * p.Da;
  if (peda == 0.0) {
    const double scale = std::max(fp.coeff_max(), 1e-30);
    if (std::abs(fp.cos_coeff(0)) > 1e-10 * scale) {
      throw SingularModeError(
          "mean mode is singular for Pe*Da = 0; absorb the mean before the mode solve", 0);
    }
    // constants live in the homogeneous kernel
  } else {
    q0.set_cos(0, -fp.cos_coeff(0) / peda);
  }
  for (int m = 1; m <= modes; ++m) {
    const double am = m * M_PI / a;
    const double d = am * am - peda;
    const double e = p.Pe * am;
    const double det = d * d + e * e;
    if (det == 0.0) {
      throw SingularModeError("resonant trigonometric mode in the coefficient comparison", m);
    }
    q0.set_cos(m, (d * fp.cos_coeff(m) - e * fp.sin_coeff(m)) / det);
    q0.set_sin(m, (e * fp.cos_coeff(m) + d * fp.sin_coeff(m)) / det);
  }
  return q0;
}

CmResult particular_cm(const CdrParams1D& p, const TrigSeries1D& fp) {
  const int modes = fp.modes();
  if (modes < 1) throw Error("collocation needs at least one mode");
  const double a = fp.half_length();
  const double peda = p.Pe * p.Da;
  const int rows = 2 * modes + 1;
  const bool drop_mean = (peda == 0.0);
  if (drop_mean) {
    const double scale = std::max(fp.coeff_max(), 1e-30);
    if (std::abs(fp.cos_coeff(0)) > 1e-10 * scale) {
      throw SingularModeError(
          "mean mode is singular for Pe*Da = 0; absorb the mean before the mode solve", 0);
    }
  }
  const int cols = drop_mean ? rows - 1 : rows;
  Eigen::MatrixXd r1(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (int j = 0; j < rows; ++j) {
    const double x = -a + 2.0 * a * (j + 0.5) / rows;
    // truncated series of fp at the collocation point (Rp2 * q_fp)
    rhs(j) = fp.eval(x, 0);
    int col = 0;
    if (!drop_mean) r1(j, col++) = -peda * 0.5;
    for (int m = 1; m <= modes; ++m) {
      const double am = m * M_PI / a;
      const double d = am * am - peda;
      const double c = std::cos(am * x), s = std::sin(am * x);
      r1(j, col++) = d * c - p.Pe * am * s;
    }
    for (int m = 1; m <= modes; ++m) {
      const double am = m * M_PI / a;
      const double d = am * am - peda;
      const double c = std::cos(am * x), s = std::sin(am * x);
      r1(j, col++) = p.Pe * am * c + d * s;
    }
  }
  Eigen::VectorXd sol;
  double condition;
  if (!drop_mean) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(r1);
    condition = 1.0 / lu.rcond();
    if (!(condition < kConditionLimit)) {
      throw IllPosedError("collocation system is singular or too ill-conditioned", condition);
    }
    sol = lu.solve(rhs);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(r1);
    const auto diag = qr.matrixR().diagonal().cwiseAbs();
    condition = diag.maxCoeff() / std::max(diag.minCoeff(), 1e-300);
    if (!(condition < kConditionLimit)) {
      throw IllPosedError("collocation system is singular or too ill-conditioned", condition);
    }
    sol = qr.solve(rhs);
  }
  CmResult res{TrigSeries1D(a, modes), condition};
  int col = 0;
  if (!drop_mean) res.q0.set_cos(0, sol(col++));
  for (int m = 1; m <= modes; ++m) res.q0.set_cos(m, sol(col++));
  for (int m = 1; m <= modes; ++m) res.q0.set_sin(m, sol(col++));
  return res;
}

// ---------------------------------------------------------------------------
// Assembly

Solver1D::Solver1D(const CdrParams1D& p, const SourceModel& f, int supplementary_order, int modes,
                   ParticularMethod method, BcKind left_kind, BcKind right_kind)
    : p_(p), kinds_{left_kind, right_kind}, q0_(p.a, modes) {
  if (modes < 1) throw Error("solver needs at least one mode");
  validate_source(f, p.a);
  if (!pointwise_evaluable(f) && supplementary_order >= 1) {
    throw SourceError("Dirac delta source requires supplementary order 0");
  }

  TrigSeries1D fp = fourier_coeffs(f, p.a, modes);
  std::vector<double> fs_coef;
  if (supplementary_order >= 1) {
    fs_coef = interpolate_source(f, supplementary_order, p.a);
    const TrigSeries1D fs_series = fourier_coeffs(PolynomialSource{fs_coef}, p.a, modes);
    for (int m = 0; m <= modes; ++m) {
      fp.set_cos(m, fp.cos_coeff(m) - fs_series.cos_coeff(m));
      if (m >= 1) fp.set_sin(m, fp.sin_coeff(m) - fs_series.sin_coeff(m));
    }
  }
  if (p.Pe * p.Da == 0.0) {
    // Constants are annihilated by the operator, so the mean of the series
    // residual moves to the polynomial right-hand side instead (the shifted
    // monomial families both absorb constants).
    const double mean = 0.5 * fp.cos_coeff(0);
    if (mean != 0.0) {
      if (fs_coef.empty()) fs_coef.assign(1, 0.0);
      fs_coef[0] += mean;
      fp.set_cos(0, 0.0);
    }
  }
  supp_ = solve_supplementary(p_, fs_coef);

  if (method == ParticularMethod::fccm) {
    q0_ = particular_fccm(p_, fp);
  } else {
    CmResult cm = particular_cm(p_, fp);
    q0_ = std::move(cm.q0);
    mode_condition_ = cm.condition;
  }

  basis_ = std::make_shared<HomogeneousBasis1D>(p_);

  Eigen::Matrix2d rf;
  for (int side = 0; side < 2; ++side) {
    const double xs = side == 0 ? -p.a : p.a;
    const int k = kinds_[side] == BcKind::dirichlet ? 0 : 1;
    rf(side, 0) = basis_->value(0, xs, k);
    rf(side, 1) = basis_->value(1, xs, k);
    fixed_trace_[static_cast<size_t>(side)] = fixed_value(xs, k);
  }
  const double det = rf(0, 0) * rf(1, 1) - rf(0, 1) * rf(1, 0);
  const double n1 = std::max(std::abs(rf(0, 0)) + std::abs(rf(1, 0)),
                             std::abs(rf(0, 1)) + std::abs(rf(1, 1)));
  const double ninv = (std::max(std::abs(rf(1, 1)) + std::abs(rf(1, 0)),
                                std::abs(rf(0, 1)) + std::abs(rf(0, 0)))) /
                      std::abs(det);
  rf_condition_ = n1 * ninv;
  // A normalized pair member that dwarfs its unit endpoint values inside the
  // interval is a near-eigenfunction of the boundary value problem; the
  // boundary determination inherits that amplification even when the 2x2
  // matrix itself looks tame.
  for (int l = 0; l < 2; ++l) {
    for (int i = 1; i < 64; ++i) {
      const double x = -p.a + 2.0 * p.a * i / 64.0;
      rf_condition_ = std::max(rf_condition_, std::abs(basis_->value(l, x, 0)));
    }
  }
  if (!std::isfinite(rf_condition_) || rf_condition_ > kConditionLimit) {
    throw IllPosedError("boundary system is singular or too ill-conditioned (resonant interval?)",
                        rf_condition_);
  }
  rf_inv_[0] = {rf(1, 1) / det, -rf(0, 1) / det};
  rf_inv_[1] = {-rf(1, 0) / det, rf(0, 0) / det};
}

double Solver1D::fixed_value(double x, int deriv) const {
  return q0_.eval(x, deriv) + supp_.eval(x, deriv);
}

FsmSolution1D Solver1D::with_boundary_values(double left, double right) const {
  const std::array<double, 2> rhs{left - fixed_trace_[0], right - fixed_trace_[1]};
  FsmSolution1D sol;
  sol.p_ = p_;
  sol.q0_ = q0_;
  sol.supp_ = supp_;
  sol.basis_ = basis_;
  sol.q1_ = {rf_inv_[0][0] * rhs[0] + rf_inv_[0][1] * rhs[1],
             rf_inv_[1][0] * rhs[0] + rf_inv_[1][1] * rhs[1]};
  sol.diag_.rf_condition = rf_condition_;
  sol.diag_.mode_condition = mode_condition_;
  const std::array<double, 2> values{left, right};
  for (int side = 0; side < 2; ++side) {
    const double xs = side == 0 ? -p_.a : p_.a;
    const int k = kinds_[side] == BcKind::dirichlet ? 0 : 1;
    sol.diag_.bc_residual[static_cast<size_t>(side)] =
        std::abs(sol.eval(xs, k) - values[static_cast<size_t>(side)]);
  }
  return sol;
}

Solver1D::DerivativeInfluence Solver1D::derivative_influence(int end) const {
  const double xs = end == 0 ? -p_.a : p_.a;
  const std::array<double, 2> pd{basis_->value(0, xs, 1), basis_->value(1, xs, 1)};
  DerivativeInfluence di{};
  for (int j = 0; j < 2; ++j) {
    di.w[static_cast<size_t>(j)] =
        pd[0] * rf_inv_[0][static_cast<size_t>(j)] + pd[1] * rf_inv_[1][static_cast<size_t>(j)];
  }
  di.constant = fixed_value(xs, 1) - di.w[0] * fixed_trace_[0] - di.w[1] * fixed_trace_[1];
  return di;
}

double FsmSolution1D::eval(double x, int deriv) const {
  return q0_.eval(x, deriv) + q1_[0] * basis_->value(0, x, deriv) +
         q1_[1] * basis_->value(1, x, deriv) + supp_.eval(x, deriv);
}

FsmSolution1D solve_1d(const CdrParams1D& p, const SourceModel& f, int supplementary_order,
                       const BcPair1D& bc, int modes, ParticularMethod method) {
  Solver1D solver(p, f, supplementary_order, modes, method, bc.left.kind, bc.right.kind);
  return solver.with_boundary_values(bc.left.value, bc.right.value);
}

}  // namespace fsm
