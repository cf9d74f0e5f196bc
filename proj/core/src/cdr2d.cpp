#include "fsm/cdr2d.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace fsm {

namespace {

double degenerate_tol(const CdrParams2D& p) { return 1e-10 * std::max(1.0, p.Pe * p.Pe); }

}  // namespace

ModeRoots mode_roots_beta(const CdrParams2D& p, double beta, Axis axis) {
  const double pe_u = axis == Axis::x1 ? p.pe1() : p.pe2();
  const double pe_v = axis == Axis::x1 ? p.pe2() : p.pe1();
  ModeRoots r;
  r.beta = beta;
  r.gamma1 = -pe_u * pe_u - 4.0 * beta * beta + 4.0 * p.Pe * p.Da;
  r.gamma2 = -4.0 * pe_v * beta;
  r.alpha1 = -0.5 * pe_u;
  const std::complex<double> root =
      0.5 * std::sqrt(std::complex<double>(r.gamma1, r.gamma2));  // principal branch
  r.alpha2 = root.real();
  r.alpha3 = root.imag();
  r.eta1 = std::complex<double>(-r.alpha1 + r.alpha3, -r.alpha2);
  r.eta2 = std::complex<double>(-r.alpha1 - r.alpha3, r.alpha2);
  return r;
}

ModeRoots mode_roots(const CdrParams2D& p, int mode, Axis axis) {
  const double other_half = axis == Axis::x1 ? p.b : p.a;
  ModeRoots r = mode_roots_beta(p, mode * M_PI / other_half, axis);
  r.mode = mode;
  return r;
}

// ---------------------------------------------------------------------------
// ModeFn2D

ModeFn2D::ModeFn2D(Axis axis, std::complex<double> w, double p0, double p1, double beta,
                   bool imag_part, double half_u)
    : axis_(axis), w_(w), p0_(p0), p1_(p1), beta_(beta), imag_(imag_part), half_u_(half_u) {}

std::complex<double> ModeFn2D::scaled_exp(double u) const {
  // exp(w u) / cosh(Re(w) half_u), written so the magnitude never overflows.
  const double cr = w_.real();
  const double mag = std::exp(cr * u - std::abs(cr) * half_u_) * 2.0 /
                     (1.0 + std::exp(-2.0 * std::abs(cr) * half_u_));
  return std::polar(mag, w_.imag() * u);
}

double ModeFn2D::eval(double x1, double x2, int k1, int k2) const {
  const double u = axis_ == Axis::x1 ? x1 : x2;
  const double v = axis_ == Axis::x1 ? x2 : x1;
  const int ku = axis_ == Axis::x1 ? k1 : k2;
  const int kv = axis_ == Axis::x1 ? k2 : k1;
  const std::complex<double> e = scaled_exp(u) * std::polar(1.0, beta_ * v);
  const std::complex<double> poly(p0_ + p1_ * u, 0.0);
  std::complex<double> val;
  if (ku == 0) {
    val = poly;
  } else if (ku == 1) {
    val = p1_ + w_ * poly;
  } else {
    val = 2.0 * w_ * p1_ + w_ * w_ * poly;
  }
  for (int k = 0; k < kv; ++k) val *= std::complex<double>(0.0, beta_);
  val *= e;
  return imag_ ? val.imag() : val.real();
}

std::complex<double> ModeFn2D::trace_amplitude(double u0, int ku) const {
  const std::complex<double> e = scaled_exp(u0);
  const std::complex<double> poly(p0_ + p1_ * u0, 0.0);
  if (ku == 0) return poly * e;
  return (p1_ + w_ * poly) * e;
}

// ---------------------------------------------------------------------------
// Families

std::vector<ModeFn2D> mode_functions(const CdrParams2D& p, double beta, Axis axis) {
  const double half_u = axis == Axis::x1 ? p.a : p.b;
  const ModeRoots r = mode_roots_beta(p, beta, axis);
  const double tol = degenerate_tol(p);
  std::vector<ModeFn2D> fns;
  if (beta == 0.0) {
    if (std::abs(r.gamma1) <= tol) {
      // double real root: {1, u} pair
      fns.emplace_back(axis, std::complex<double>(-r.alpha1, 0.0), 1.0, 0.0, 0.0, false, half_u);
      fns.emplace_back(axis, std::complex<double>(-r.alpha1, 0.0), 0.0, 1.0 / half_u, 0.0, false,
                       half_u);
    } else if (r.gamma1 > 0.0) {
      const std::complex<double> w(-r.alpha1, r.alpha2);
      fns.emplace_back(axis, w, 1.0, 0.0, 0.0, false, half_u);  // exp cos
      fns.emplace_back(axis, w, 1.0, 0.0, 0.0, true, half_u);   // exp sin
    } else {
      fns.emplace_back(axis, std::complex<double>(-r.alpha1 + r.alpha3, 0.0), 1.0, 0.0, 0.0, false,
                       half_u);
      fns.emplace_back(axis, std::complex<double>(-r.alpha1 - r.alpha3, 0.0), 1.0, 0.0, 0.0, false,
                       half_u);
    }
    return fns;
  }
  if (std::abs(r.gamma1) <= tol && std::abs(r.gamma2) <= tol) {
    const std::complex<double> w(-r.alpha1, 0.0);
    fns.emplace_back(axis, w, 1.0, 0.0, beta, false, half_u);
    fns.emplace_back(axis, w, 0.0, 1.0 / half_u, beta, false, half_u);
    fns.emplace_back(axis, w, 1.0, 0.0, beta, true, half_u);
    fns.emplace_back(axis, w, 0.0, 1.0 / half_u, beta, true, half_u);
    return fns;
  }
  // eta1 and eta2 drive the oscillatory-phase forms cos(beta v -/+ alpha2 u).
  fns.emplace_back(axis, r.eta1, 1.0, 0.0, beta, false, half_u);
  fns.emplace_back(axis, r.eta1, 1.0, 0.0, beta, true, half_u);
  fns.emplace_back(axis, r.eta2, 1.0, 0.0, beta, false, half_u);
  fns.emplace_back(axis, r.eta2, 1.0, 0.0, beta, true, half_u);
  return fns;
}

HomogeneousFamily HomogeneousFamily::build(const CdrParams2D& p, int mode_cap, Axis axis) {
  HomogeneousFamily fam;
  fam.axis_ = axis;
  const double other_half = axis == Axis::x1 ? p.b : p.a;
  for (int n = 0; n <= mode_cap; ++n) {
    ModeRoots r = mode_roots(p, n, axis);
    fam.roots_.push_back(r);
    auto fns = mode_functions(p, n * M_PI / other_half, axis);
    fam.fns_.insert(fam.fns_.end(), fns.begin(), fns.end());
  }
  return fam;
}

// ---------------------------------------------------------------------------
// Particular solution

TrigSeries2D particular_2d_fccm(const CdrParams2D& p, const TrigSeries2D& f) {
  const double a = f.half_length_x1(), b = f.half_length_x2();
  const int mm = f.m_modes(), nn = f.n_modes();
  TrigSeries2D q(a, b, mm, nn);
  const double peda = p.Pe * p.Da;
  const double p1 = p.pe1(), p2 = p.pe2();
  const double scale = std::max(f.coeff_max(), 1e-30);
  for (int m = 0; m <= mm; ++m) {
    const double am = m * M_PI / a;
    for (int n = 0; n <= nn; ++n) {
      const double bn = n * M_PI / b;
      const double d = am * am + bn * bn - peda;
      const double g1 = p1 * am, g2 = p2 * bn;
      if (m == 0 && n == 0) {
        const double rhs = f.coeff(0, 0, Parity::cc);
        if (peda == 0.0) {
          if (std::abs(rhs) > 1e-10 * scale) {
            throw SingularModeError("mean mode is singular for Pe*Da = 0", 0, 0);
          }
        } else {
          q.set_coeff(0, 0, Parity::cc, -rhs / peda);
        }
        continue;
      }
      if (m == 0 || n == 0) {
        // 2x2 scaled-rotation block in the two admissible parities
        const double g = (m == 0) ? g2 : g1;
        const Parity ps = (m == 0) ? Parity::cs : Parity::sc;
        const double det = d * d + g * g;
        if (det <= 1e-28 * scale) {
          throw SingularModeError("resonant 2D mode block", m, n);
        }
        const double fc = f.coeff(m, n, Parity::cc);
        const double fs = f.coeff(m, n, ps);
        q.set_coeff(m, n, Parity::cc, (d * fc - g * fs) / det);
        q.set_coeff(m, n, ps, (g * fc + d * fs) / det);
        continue;
      }
      const double det =
          (d * d + (g1 + g2) * (g1 + g2)) * (d * d + (g1 - g2) * (g1 - g2));
      const double det_scale = d * d + g1 * g1 + g2 * g2;
      if (det <= 1e-28 * det_scale * det_scale) {
        throw SingularModeError("resonant 2D mode block", m, n);
      }
      Eigen::Matrix4d k;
      // parity order cc, cs, sc, ss
      k << d, g2, g1, 0,   //
          -g2, d, 0, g1,   //
          -g1, 0, d, g2,   //
          0, -g1, -g2, d;
      Eigen::Vector4d rhs(f.coeff(m, n, Parity::cc), f.coeff(m, n, Parity::cs),
                          f.coeff(m, n, Parity::sc), f.coeff(m, n, Parity::ss));
      const Eigen::Vector4d sol = k.partialPivLu().solve(rhs);
      q.set_coeff(m, n, Parity::cc, sol(0));
      q.set_coeff(m, n, Parity::cs, sol(1));
      q.set_coeff(m, n, Parity::sc, sol(2));
      q.set_coeff(m, n, Parity::ss, sol(3));
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Edge assembly

namespace {

struct EdgeInfo {
  Axis normal_axis;      // axis whose coordinate is fixed on this edge
  double fixed;          // the fixed coordinate value
  double outward;        // sign of the outward normal derivative
  double half_coord;     // half-length along the edge
  int cap;               // mode cap of the edge expansion
  const EdgeBc* bc;
};

// Evaluates a field functional (value or outward normal derivative) on an edge.
template <typename F>
std::function<double(double)> edge_functional(const EdgeInfo& e, F field) {
  const bool dirichlet = e.bc->kind == BcKind::dirichlet;
  if (e.normal_axis == Axis::x1) {
    return [=](double v) {
      return dirichlet ? field(e.fixed, v, 0, 0) : e.outward * field(e.fixed, v, 1, 0);
    };
  }
  return [=](double v) {
    return dirichlet ? field(v, e.fixed, 0, 0) : e.outward * field(v, e.fixed, 0, 1);
  };
}

}  // namespace

FsmSolution2D assemble_edges(const CdrParams2D& p, const EdgeBcSpec& bc,
                             const HomogeneousFamily& fam1, const HomogeneousFamily& fam2,
                             const TrigSeries2D& particular, const Truncation& trunc) {
  const int mm = trunc.m, nn = trunc.n;
  if (mm < 1 || nn < 1) throw Error("2D assembly needs truncation (M, N) >= (1, 1)");
  const int cols = fam1.size() + fam2.size() + 1;
  const int rows = 2 * (2 * nn + 1) + 2 * (2 * mm + 1) + 4;
  const int base_panels = 16 * (std::max(mm, nn) + 1);

  const std::array<EdgeInfo, 4> edges{{
      {Axis::x1, -p.a, -1.0, p.b, nn, &bc.left},
      {Axis::x1, p.a, 1.0, p.b, nn, &bc.right},
      {Axis::x2, -p.b, -1.0, p.a, mm, &bc.bottom},
      {Axis::x2, p.b, 1.0, p.a, mm, &bc.top},
  }};
  for (const auto& e : edges) {
    if (!e.bc->data) throw Error("2D assembly: all four edges need boundary data");
  }
  const std::array<std::array<double, 2>, 4> corners{
      {{-p.a, -p.b}, {p.a, -p.b}, {-p.a, p.b}, {p.a, p.b}}};

  // Corner condition priority: x1-edge if Dirichlet, else x2-edge if
  // Dirichlet, else the x1-edge Neumann condition.
  struct CornerRule {
    const EdgeInfo* edge;
    double coord;  // coordinate of the corner along that edge
  };
  std::array<CornerRule, 4> corner_rules{};
  for (int c = 0; c < 4; ++c) {
    const double cx1 = corners[static_cast<size_t>(c)][0];
    const double cx2 = corners[static_cast<size_t>(c)][1];
    const EdgeInfo& ex1 = edges[cx1 < 0 ? 0 : 1];
    const EdgeInfo& ex2 = edges[cx2 < 0 ? 2 : 3];
    if (ex1.bc->kind == BcKind::dirichlet) {
      corner_rules[static_cast<size_t>(c)] = {&ex1, cx2};
    } else if (ex2.bc->kind == BcKind::dirichlet) {
      corner_rules[static_cast<size_t>(c)] = {&ex2, cx1};
    } else {
      corner_rules[static_cast<size_t>(c)] = {&ex1, cx2};
    }
  }

  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  double worst_quadrature = 0.0;

  auto project_field = [&](const EdgeInfo& e, const std::function<double(double)>& g,
                           Eigen::Ref<Eigen::VectorXd> block) {
    auto pr = project_fourier(g, e.half_coord, e.cap, base_panels);
    worst_quadrature = std::max(worst_quadrature, pr.error_estimate);
    for (int k = 0; k <= e.cap; ++k) block(k) = pr.cos_coeffs[static_cast<size_t>(k)];
    for (int k = 1; k <= e.cap; ++k) block(e.cap + k) = pr.sin_coeffs[static_cast<size_t>(k - 1)];
  };

  // Column fill: one column per homogeneous field, plus the corner term.
  auto fill_family = [&](const HomogeneousFamily& fam, int col0) {
    for (int i = 0; i < fam.size(); ++i) {
      const ModeFn2D& fn = fam.fn(i);
      const int col = col0 + i;
      int row = 0;
      for (const auto& e : edges) {
        if (fn.axis() == e.normal_axis) {
          // Single-mode trace: only the fn's own edge mode is hit.
          const int k = fam.mode_of(i);
          const int ku = e.bc->kind == BcKind::dirichlet ? 0 : 1;
          std::complex<double> z = fn.trace_amplitude(e.fixed, ku);
          if (ku == 1) z *= e.outward;
          // Re part: trace = Re(z) cos - Im(z) sin; Im part: Im(z) cos + Re(z) sin.
          double vc, vs;
          if (!fn.imag_part()) {
            vc = z.real();
            vs = -z.imag();
          } else {
            vc = z.imag();
            vs = z.real();
          }
          if (k == 0) {
            sys(row, col) = 2.0 * vc;
          } else {
            sys(row + k, col) = vc;
            sys(row + e.cap + k, col) = vs;
          }
        } else {
          auto g = edge_functional(e, [&](double x1, double x2, int k1, int k2) {
            return fn.eval(x1, x2, k1, k2);
          });
          project_field(e, g, sys.col(col).segment(row, 2 * e.cap + 1));
        }
        row += 2 * e.cap + 1;
      }
      for (int c = 0; c < 4; ++c) {
        const auto& rule = corner_rules[static_cast<size_t>(c)];
        auto g = edge_functional(*rule.edge, [&](double x1, double x2, int k1, int k2) {
          return fn.eval(x1, x2, k1, k2);
        });
        sys(row + c, col) = g(rule.coord);
      }
    }
  };
  fill_family(fam1, 0);
  fill_family(fam2, fam1.size());

  // Corner term column and boundary data / particular-trace right-hand side.
  const int ccol = cols - 1;
  auto corner_field = [&](double x1, double x2, int k1, int k2) -> double {
    const double s = 1.0 / (4.0 * p.a * p.b);
    if (k1 == 0 && k2 == 0) return x1 * x2 * s;
    if (k1 == 1 && k2 == 0) return x2 * s;
    if (k1 == 0 && k2 == 1) return x1 * s;
    if (k1 == 1 && k2 == 1) return s;
    return 0.0;
  };
  {
    int row = 0;
    for (const auto& e : edges) {
      auto g = edge_functional(e, corner_field);
      project_field(e, g, sys.col(ccol).segment(row, 2 * e.cap + 1));

      // data expansion
      Eigen::VectorXd data_block(2 * e.cap + 1);
      project_field(e, e.bc->data, data_block);

      // analytic single-mode expansion of the particular trace
      Eigen::VectorXd part_block = Eigen::VectorXd::Zero(2 * e.cap + 1);
      const bool dirichlet = e.bc->kind == BcKind::dirichlet;
      const int ku = dirichlet ? 0 : 1;
      const double u0 = e.fixed;
      const double ha = e.normal_axis == Axis::x1 ? p.a : p.b;
      const int ucap = e.normal_axis == Axis::x1 ? mm : nn;
      for (int k = 0; k <= e.cap; ++k) {
        double ac = 0.0, as = 0.0;
        for (int mu = 0; mu <= ucap; ++mu) {
          const double au = mu * M_PI / ha;
          const double muw = (mu == 0) ? 0.5 : 1.0;
          double cu = std::cos(au * u0), su = std::sin(au * u0);
          double dcu = cu, dsu = su;
          if (ku == 1) {
            dcu = -au * su;
            dsu = au * cu;
          }
          // pc_*: pairs with cos(edge coord); ps_*: pairs with sin(edge coord).
          double pc_c, pc_s, ps_c, ps_s;
          if (e.normal_axis == Axis::x1) {
            pc_c = particular.coeff(mu, k, Parity::cc);
            pc_s = particular.coeff(mu, k, Parity::sc);
            ps_c = particular.coeff(mu, k, Parity::cs);
            ps_s = particular.coeff(mu, k, Parity::ss);
          } else {
            pc_c = particular.coeff(k, mu, Parity::cc);
            pc_s = particular.coeff(k, mu, Parity::cs);
            ps_c = particular.coeff(k, mu, Parity::sc);
            ps_s = particular.coeff(k, mu, Parity::ss);
          }
          ac += muw * (pc_c * dcu + pc_s * dsu);
          as += muw * (ps_c * dcu + ps_s * dsu);
        }
        const double sign = dirichlet ? 1.0 : e.outward;
        part_block(k) = sign * ac;
        if (k >= 1) part_block(e.cap + k) = sign * as;
      }

      rhs.segment(row, 2 * e.cap + 1) = data_block - part_block;
      row += 2 * e.cap + 1;
    }
    for (int c = 0; c < 4; ++c) {
      const auto& rule = corner_rules[static_cast<size_t>(c)];
      auto gc = edge_functional(*rule.edge, corner_field);
      sys(row + c, ccol) = gc(rule.coord);
      auto gp = edge_functional(*rule.edge, [&](double x1, double x2, int k1, int k2) {
        return particular.eval(x1, x2, k1, k2);
      });
      rhs(row + c) = rule.edge->bc->data(rule.coord) - gp(rule.coord);
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys);
  const long rank = qr.rank();
  if (rank < cols) {
    throw RankError("2D boundary assembly is rank deficient", rank, cols);
  }
  const Eigen::VectorXd u = qr.solve(rhs);

  FsmSolution2D sol;
  sol.p_ = p;
  sol.particular_ = particular;
  sol.fam1_ = fam1;
  sol.fam2_ = fam2;
  sol.c1_.assign(u.data(), u.data() + fam1.size());
  sol.c2_.assign(u.data() + fam1.size(), u.data() + fam1.size() + fam2.size());
  sol.corner_ = u(cols - 1);
  sol.diag_.residual_norm = (sys * u - rhs).norm();
  sol.diag_.rhs_norm = rhs.norm();
  sol.diag_.rank = rank;
  const auto diag = qr.matrixR().diagonal().cwiseAbs();
  sol.diag_.condition = diag.maxCoeff() / std::max(diag.minCoeff(), 1e-300);
  sol.diag_.worst_quadrature = worst_quadrature;
  sol.diag_.poorly_resolved =
      sol.diag_.residual_norm > 1e-6 * std::max(sol.diag_.rhs_norm, 1.0);
  return sol;
}

FsmSolution2D FsmSolution2D::compose(const CdrParams2D& p, TrigSeries2D particular,
                                     HomogeneousFamily fam1, HomogeneousFamily fam2,
                                     std::vector<double> c1, std::vector<double> c2,
                                     double corner) {
  if (static_cast<int>(c1.size()) != fam1.size() || static_cast<int>(c2.size()) != fam2.size()) {
    throw Error("compose: coefficient counts do not match the families");
  }
  FsmSolution2D sol;
  sol.p_ = p;
  sol.particular_ = std::move(particular);
  sol.fam1_ = std::move(fam1);
  sol.fam2_ = std::move(fam2);
  sol.c1_ = std::move(c1);
  sol.c2_ = std::move(c2);
  sol.corner_ = corner;
  return sol;
}

double FsmSolution2D::eval(double x1, double x2, int k1, int k2) const {
  double sum = particular_.eval(x1, x2, k1, k2);  // also performs domain checks
  for (int i = 0; i < fam1_.size(); ++i) {
    sum += c1_[static_cast<size_t>(i)] * fam1_.fn(i).eval(x1, x2, k1, k2);
  }
  for (int i = 0; i < fam2_.size(); ++i) {
    sum += c2_[static_cast<size_t>(i)] * fam2_.fn(i).eval(x1, x2, k1, k2);
  }
  const double s = corner_ / (4.0 * p_.a * p_.b);
  if (k1 == 0 && k2 == 0) {
    sum += s * x1 * x2;
  } else if (k1 == 1 && k2 == 0) {
    sum += s * x2;
  } else if (k1 == 0 && k2 == 1) {
    sum += s * x1;
  } else if (k1 == 1 && k2 == 1) {
    sum += s;
  }
  return sum;
}

FsmSolution2D solve_2d(const CdrParams2D& p, const SourceModel2D& f, const EdgeBcSpec& bc,
                       int m_modes, int n_modes) {
  const TrigSeries2D fc = fourier_coeffs_2d(f, p.a, p.b, m_modes, n_modes);
  const TrigSeries2D particular = particular_2d_fccm(p, fc);
  const HomogeneousFamily fam1 = HomogeneousFamily::build(p, n_modes, Axis::x1);
  const HomogeneousFamily fam2 = HomogeneousFamily::build(p, m_modes, Axis::x2);
  return assemble_edges(p, bc, fam1, fam2, particular, Truncation{m_modes, n_modes});
}

ReferenceField2D::ReferenceField2D(const CdrParams2D& p) : p_(p) {
  fns_ = mode_functions(p, M_PI / (2.0 * p.b), Axis::x1);
}

double ReferenceField2D::eval(double x1, double x2, int k1, int k2) const {
  double sum = 0.0;
  for (const auto& fn : fns_) sum += fn.eval(x1, x2, k1, k2);
  return sum;
}

}  // namespace fsm
