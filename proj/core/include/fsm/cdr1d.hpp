#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>

#include "fsm/series.hpp"
#include "fsm/source.hpp"

namespace fsm {

/// Dimensionless operator parameters of
///   L = Pe d/dx - d^2/dx^2 - Pe*Da   on [-a, a].
struct CdrParams1D {
  double Pe = 0.0;
  double Da = 0.0;
  double a = 1.0;
};

enum class Regime { distinct_real, complex_pair, double_real };

/// Characteristic data of eta^2 - Pe eta + Pe Da = 0.
struct RootData {
  Regime regime = Regime::double_real;
  double alpha10 = 0.0;  // -Pe/2
  double alpha20 = 0.0;  // sqrt(4 Pe Da - Pe^2)/2 in the oscillatory regime
  double alpha30 = 0.0;  // sqrt(Pe^2 - 4 Pe Da)/2 in the exponential regime
  std::complex<double> eta1, eta2;
};

/// Regime selection by the sign of Pe^2 - 4 Pe Da, with equality tolerance
/// 1e-12 * max(1, Pe^2).
RootData classify_regime(const CdrParams1D& p);

/// The two regime-dependent homogeneous solutions, each rescaled so that its
/// larger endpoint magnitude is 1 (raw exponentials reach e^(Pe a) and would
/// wreck the boundary system's conditioning). Exponentials are evaluated in a
/// shifted form so the rescaling never overflows.
class HomogeneousBasis1D {
 public:
  explicit HomogeneousBasis1D(const CdrParams1D& p);

  /// which in {0, 1}; deriv in {0, 1, 2}; analytic derivatives.
  double value(int which, double x, int deriv) const;

  const RootData& roots() const { return roots_; }
  double half_length() const { return a_; }
  /// Normalization factor applied to the shifted representation of function l.
  double scale(int which) const { return scale_[static_cast<size_t>(which)]; }

 private:
  struct Fn {
    double u = 1.0, v = 0.0;  // polynomial factor u + v x
    double c = 0.0, x0 = 0.0; // exp(c (x - x0))
    double d = 0.0, e = 0.0;  // sin(d x + e) when trig
    bool trig = false;
    double amp = 1.0;
  };
  static double eval_fn(const Fn& f, double x, int deriv);

  double a_;
  RootData roots_;
  std::array<Fn, 2> fn_;
  std::array<double, 2> scale_;
};

/// Polynomial sum_j coef[j] * (x/a)^(j+shift). The shift selects the monomial
/// family that keeps the polynomial particular-solution system nonsingular:
/// 0 for Pe != 0, Da != 0; 1 for Pe != 0, Da = 0; 2 for Pe = 0.
struct ShiftedPoly {
  double a = 1.0;
  int shift = 0;
  std::vector<double> coef;

  bool empty() const { return coef.empty(); }
  double eval(double x, int deriv) const;
};

/// Monomial shift for the supplementary basis under the given parameters.
int monomial_shift(const CdrParams1D& p);

/// Coefficients (in (x/a)^j, j = 0..order) of the polynomial interpolating the
/// source at order+1 uniform nodes including both endpoints. Solved from the
/// Vandermonde system with partial pivoting in extended precision.
/// Dirac deltas are rejected.
std::vector<double> interpolate_source(const SourceModel& f, int order, double a);

/// Supplementary polynomial phi_s with L[phi_s] = f_s exactly, where f_s has
/// coefficients fs_coef in plain (x/a)^j. Solved by back-substitution of the
/// banded transformation matrix of the selected monomial family.
ShiftedPoly solve_supplementary(const CdrParams1D& p, const std::vector<double>& fs_coef);

/// Fourier-coefficient-comparison particular solution: mode 0 through
/// V10 = -Vfp,10 / (Pe Da), modes m >= 1 through the exact 2x2 block.
/// If Pe*Da = 0 the mean of fp must already be absorbed (|Vfp,10| tiny);
/// V10 is then pinned to 0 because constants live in the homogeneous kernel.
TrigSeries1D particular_fccm(const CdrParams1D& p, const TrigSeries1D& fp);

struct CmResult {
  TrigSeries1D q0;
  double condition = 1.0;
};

/// Collocation-method particular solution at the 2M+1 midpoint-shifted uniform
/// points x_j = -a + 2a(j - 1/2)/(2M+1); endpoints are excluded since all
/// basis functions are 2a-periodic and endpoint rows would coincide.
CmResult particular_cm(const CdrParams1D& p, const TrigSeries1D& fp);

enum class BcKind { dirichlet, neumann };

struct BoundaryCondition1D {
  BcKind kind = BcKind::dirichlet;
  double value = 0.0;
};

struct BcPair1D {
  BoundaryCondition1D left, right;
};

enum class ParticularMethod { fccm, cm };

struct SolveDiagnostics1D {
  double rf_condition = 1.0;       // boundary 2x2 system
  double mode_condition = 1.0;     // CM collocation system (1 for FCCM blocks)
  std::array<double, 2> bc_residual{0.0, 0.0};
};

/// Composed solution phi = phi_0 + phi_1 + phi_s, evaluable with analytic
/// derivatives up to order 2. Immutable after construction.
class FsmSolution1D {
 public:
  double eval(double x, int deriv = 0) const;

  const CdrParams1D& params() const { return p_; }
  const TrigSeries1D& particular() const { return q0_; }
  const std::array<double, 2>& general_coeffs() const { return q1_; }
  const ShiftedPoly& supplementary() const { return supp_; }
  const HomogeneousBasis1D& basis() const { return *basis_; }
  const SolveDiagnostics1D& diagnostics() const { return diag_; }

 private:
  friend class Solver1D;
  CdrParams1D p_;
  TrigSeries1D q0_{1.0, 0};
  std::array<double, 2> q1_{0.0, 0.0};
  ShiftedPoly supp_;
  std::shared_ptr<const HomogeneousBasis1D> basis_;
  SolveDiagnostics1D diag_;
};

/// One-shot pipeline: interpolate (if order >= 1), supplementary, residual
/// Fourier coefficients, particular solution, boundary reduction.
/// supplementary_order = 0 disables the polynomial path entirely.
FsmSolution1D solve_1d(const CdrParams1D& p, const SourceModel& f, int supplementary_order,
                       const BcPair1D& bc, int modes, ParticularMethod method);

/// Reusable pieces of a solve that do not depend on boundary values; used by
/// the multi-domain solver, which re-assembles the same core for many boundary
/// data. Rf rows follow the boundary kinds given at construction.
class Solver1D {
 public:
  Solver1D(const CdrParams1D& p, const SourceModel& f, int supplementary_order, int modes,
           ParticularMethod method, BcKind left_kind = BcKind::dirichlet,
           BcKind right_kind = BcKind::dirichlet);

  FsmSolution1D with_boundary_values(double left, double right) const;

  /// phi'(x_end) as an affine function of the boundary values:
  /// phi'(end) = w[0]*q_b[0] + w[1]*q_b[1] + constant.
  struct DerivativeInfluence {
    std::array<double, 2> w;
    double constant;
  };
  DerivativeInfluence derivative_influence(int end) const;  // end 0: -a, 1: +a

  const CdrParams1D& params() const { return p_; }
  double rf_condition() const { return rf_condition_; }

 private:
  double fixed_value(double x, int deriv) const;  // phi_0 + phi_s

  CdrParams1D p_;
  BcKind kinds_[2];
  std::shared_ptr<const HomogeneousBasis1D> basis_;
  TrigSeries1D q0_{1.0, 0};
  ShiftedPoly supp_;
  double mode_condition_ = 1.0;
  std::array<std::array<double, 2>, 2> rf_inv_;  // explicit 2x2 inverse
  double rf_condition_ = 1.0;
  std::array<double, 2> fixed_trace_;            // bc-kind trace of phi_0 + phi_s
};

}  // namespace fsm
