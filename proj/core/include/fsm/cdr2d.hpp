#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fsm/cdr1d.hpp"
#include "fsm/series.hpp"
#include "fsm/source.hpp"

namespace fsm {

/// Parameters of
///   L = Pe1 d/dx1 + Pe2 d/dx2 - (d^2/dx1^2 + d^2/dx2^2) - Pe*Da
/// on [-a, a] x [-b, b], with Pe1 = Pe cos(theta), Pe2 = Pe sin(theta).
struct CdrParams2D {
  double Pe = 0.0;
  double Da = 0.0;
  double theta = 0.0;  // inflow angle, radians
  double a = 1.0;
  double b = 1.0;

  double pe1() const { return Pe * std::cos(theta); }
  double pe2() const { return Pe * std::sin(theta); }
};

/// Which coordinate carries the exponential factor of a homogeneous family.
enum class Axis { x1, x2 };

/// Per-mode characteristic data of
///   eta^2 - Pe_u eta + (-beta^2 + Pe Da - i Pe_v beta) = 0,
/// where u is the exponential axis and beta the trig frequency on the other
/// axis. gamma1 uses the square of the convection component (substituting the
/// roots back into the characteristic equation forces -Pe_u^2; the linear form
/// seen in print does not close).
struct ModeRoots {
  int mode = 0;
  double beta = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
  std::complex<double> eta1, eta2;
};

ModeRoots mode_roots_beta(const CdrParams2D& p, double beta, Axis axis);
ModeRoots mode_roots(const CdrParams2D& p, int mode, Axis axis);

/// One real homogeneous field
///   part[(p0 + p1 u) exp(w u) exp(i beta v)] / cosh(Re(w) * half_u),
/// with (u, v) = (x1, x2) or swapped. The cosh normalization keeps endpoint
/// magnitudes O(1); evaluation uses a shifted exponential so nothing
/// overflows. Analytic partial derivatives up to total order 2.
class ModeFn2D {
 public:
  ModeFn2D(Axis axis, std::complex<double> w, double p0, double p1, double beta, bool imag_part,
           double half_u);

  double eval(double x1, double x2, int k1, int k2) const;

  /// Complex amplitude z of the single-mode trace at fixed u:
  /// (d^ku/du^ku field)(u0, v) = part[z exp(i beta v)].
  std::complex<double> trace_amplitude(double u0, int ku) const;

  Axis axis() const { return axis_; }
  double beta() const { return beta_; }
  bool imag_part() const { return imag_; }

 private:
  std::complex<double> scaled_exp(double u) const;

  Axis axis_;
  std::complex<double> w_;
  double p0_, p1_;
  double beta_;
  bool imag_;
  double half_u_;
};

/// Regime-classified family of homogeneous fields with exponential behavior
/// along one axis: 2 members for mode 0, 4 for every mode >= 1.
class HomogeneousFamily {
 public:
  static HomogeneousFamily build(const CdrParams2D& p, int mode_cap, Axis axis);

  int size() const { return static_cast<int>(fns_.size()); }
  const ModeFn2D& fn(int i) const { return fns_[static_cast<size_t>(i)]; }
  int mode_of(int i) const { return i < 2 ? 0 : (i - 2) / 4 + 1; }
  const ModeRoots& roots(int mode) const { return roots_[static_cast<size_t>(mode)]; }
  Axis axis() const { return axis_; }
  int mode_cap() const { return static_cast<int>(roots_.size()) - 1; }

 private:
  Axis axis_ = Axis::x1;
  std::vector<ModeFn2D> fns_;
  std::vector<ModeRoots> roots_;
};

/// Homogeneous quadruple (pair for beta = 0) at an arbitrary trig frequency;
/// the building block of both the families and the reference field.
std::vector<ModeFn2D> mode_functions(const CdrParams2D& p, double beta, Axis axis);

/// Mode-by-mode coefficient comparison for the 2D particular solution: every
/// retained (m, n) block is a 4x4 (or degenerate 2x2 / 1x1) linear system in
/// the parity coefficients, solved exactly.
TrigSeries2D particular_2d_fccm(const CdrParams2D& p, const TrigSeries2D& f_coeffs);

struct EdgeBc {
  BcKind kind = BcKind::dirichlet;
  std::function<double(double)> data;  // of the edge coordinate
};

/// Four edges: left x1=-a, right x1=+a, bottom x2=-b, top x2=+b. Neumann data
/// prescribes the outward normal derivative.
struct EdgeBcSpec {
  EdgeBc left, right, bottom, top;
};

struct Diagnostics2D {
  double residual_norm = 0.0;
  double rhs_norm = 0.0;
  double condition = 1.0;
  long rank = 0;
  bool poorly_resolved = false;
  double worst_quadrature = 0.0;
};

/// Composed 2D solution: particular series + two homogeneous families +
/// corner term q * x1 x2 / (4ab). Immutable after assembly.
class FsmSolution2D {
 public:
  /// Direct composition from known coefficients (deserialization, tests).
  static FsmSolution2D compose(const CdrParams2D& p, TrigSeries2D particular,
                               HomogeneousFamily fam1, HomogeneousFamily fam2,
                               std::vector<double> c1, std::vector<double> c2, double corner);

  double eval(double x1, double x2, int k1, int k2) const;

  const CdrParams2D& params() const { return p_; }
  const TrigSeries2D& particular() const { return particular_; }
  const std::vector<double>& family_coeffs(Axis axis) const {
    return axis == Axis::x1 ? c1_ : c2_;
  }
  double corner_coeff() const { return corner_; }
  const Diagnostics2D& diagnostics() const { return diag_; }

 private:
  friend FsmSolution2D assemble_edges(const CdrParams2D&, const EdgeBcSpec&,
                                      const HomogeneousFamily&, const HomogeneousFamily&,
                                      const TrigSeries2D&, const Truncation&);
  CdrParams2D p_;
  TrigSeries2D particular_{1.0, 1.0, 0, 0};
  HomogeneousFamily fam1_, fam2_;
  std::vector<double> c1_, c2_;
  double corner_ = 0.0;
  Diagnostics2D diag_;
};

/// Boundary determination of the homogeneous/corner coefficients: expands the
/// boundary residual of every edge in that edge's own full-range basis
/// (2N+1 coefficient equations per x1-edge, 2M+1 per x2-edge), appends the 4
/// corner-point residual equations, and solves the least-squares system by
/// column-pivoted orthogonal factorization. Same-axis family traces and the
/// particular series traces are expanded analytically (they are single-mode);
/// cross-axis traces and the corner term go through the shared quadrature.
FsmSolution2D assemble_edges(const CdrParams2D& p, const EdgeBcSpec& bc,
                             const HomogeneousFamily& fam1, const HomogeneousFamily& fam2,
                             const TrigSeries2D& particular, const Truncation& trunc);

/// Full 2D pipeline: source coefficients, particular solution, families,
/// edge assembly.
FsmSolution2D solve_2d(const CdrParams2D& p, const SourceModel2D& f, const EdgeBcSpec& bc,
                       int m_modes, int n_modes);

/// Closed-form reference field: the sum of the four homogeneous fields at
/// beta_ref = pi/(2b). Exactly annihilated by the operator, so it validates
/// the solver with zero source and its own boundary traces.
class ReferenceField2D {
 public:
  explicit ReferenceField2D(const CdrParams2D& p);
  double eval(double x1, double x2, int k1, int k2) const;
  const CdrParams2D& params() const { return p_; }

 private:
  CdrParams2D p_;
  std::vector<ModeFn2D> fns_;
};

}  // namespace fsm
