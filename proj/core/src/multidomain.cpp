#include "fsm/multidomain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fsm {

MultiDomainSolution1D solve_multidomain(double Pe, double Da, const MultiDomainSpec& spec,
                                        const SourceModel& f_global, const BcPair1D& outer) {
  const auto& bp = spec.breakpoints;
  const int subs = static_cast<int>(bp.size()) - 1;
  if (subs < 2) throw Error("multi-domain solve needs at least two subintervals");
  for (int i = 0; i < subs; ++i) {
    if (!(bp[static_cast<size_t>(i + 1)] > bp[static_cast<size_t>(i)])) {
      throw Error("breakpoints must be strictly increasing");
    }
  }
  if (spec.schemes.size() != 1 && spec.schemes.size() != static_cast<size_t>(subs)) {
    throw Error("scheme list must have one entry or one per subinterval");
  }
  auto scheme = [&](int i) -> const SubdomainScheme& {
    return spec.schemes.size() == 1 ? spec.schemes[0] : spec.schemes[static_cast<size_t>(i)];
  };

  const double g_lo = bp.front(), g_hi = bp.back();
  std::vector<Solver1D> cores;
  cores.reserve(static_cast<size_t>(subs));
  std::vector<double> centers(static_cast<size_t>(subs));
  for (int i = 0; i < subs; ++i) {
    const double lo = bp[static_cast<size_t>(i)], hi = bp[static_cast<size_t>(i + 1)];
    centers[static_cast<size_t>(i)] = 0.5 * (lo + hi);
    const CdrParams1D local{Pe, Da, 0.5 * (hi - lo)};
    const auto& sch = scheme(i);
    cores.emplace_back(local, restrict_source(f_global, g_lo, g_hi, lo, hi),
                       sch.supplementary_order, sch.modes, sch.method);
  }

  // Unknowns: the solution value at every breakpoint. Dirichlet rows pin the
  // outer values; internal rows equate phi' across the breakpoint; an outer
  // Neumann condition contributes a derivative row for its own endpoint.
  const int nv = subs + 1;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv);
  if (outer.left.kind == BcKind::dirichlet) {
    sys(0, 0) = 1.0;
    rhs(0) = outer.left.value;
  } else {
    const auto di = cores[0].derivative_influence(0);
    sys(0, 0) = di.w[0];
    sys(0, 1) = di.w[1];
    rhs(0) = outer.left.value - di.constant;
  }
  for (int i = 1; i < subs; ++i) {
    const auto left = cores[static_cast<size_t>(i - 1)].derivative_influence(1);
    const auto right = cores[static_cast<size_t>(i)].derivative_influence(0);
    sys(i, i - 1) = left.w[0];
    sys(i, i) = left.w[1] - right.w[0];
    sys(i, i + 1) = -right.w[1];
    rhs(i) = right.constant - left.constant;
  }
  if (outer.right.kind == BcKind::dirichlet) {
    sys(nv - 1, nv - 1) = 1.0;
    rhs(nv - 1) = outer.right.value;
  } else {
    const auto di = cores[static_cast<size_t>(subs - 1)].derivative_influence(1);
    sys(nv - 1, nv - 2) = di.w[0];
    sys(nv - 1, nv - 1) = di.w[1];
    rhs(nv - 1) = outer.right.value - di.constant;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
  const double condition = 1.0 / lu.rcond();
  if (!(condition < 1e12)) {
    throw IllPosedError("interface system is singular or too ill-conditioned", condition);
  }
  const Eigen::VectorXd values = lu.solve(rhs);

  MultiDomainSolution1D out;
  out.breakpoints_ = bp;
  out.centers_ = centers;
  out.endpoint_values_.assign(values.data(), values.data() + nv);
  out.interface_condition_ = condition;
  out.pieces_.reserve(static_cast<size_t>(subs));
  for (int i = 0; i < subs; ++i) {
    out.pieces_.push_back(
        cores[static_cast<size_t>(i)].with_boundary_values(values(i), values(i + 1)));
  }
  return out;
}

double MultiDomainSolution1D::eval(double x_global, int deriv) const {
  const double lo = breakpoints_.front(), hi = breakpoints_.back();
  const double tol = 1e-12 * (hi - lo);
  if (x_global < lo - tol || x_global > hi + tol) {
    throw DomainError("multi-domain eval: point outside the global interval");
  }
  x_global = std::clamp(x_global, lo, hi);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x_global);
  int i = static_cast<int>(it - breakpoints_.begin()) - 1;
  i = std::clamp(i, 0, pieces() - 1);
  return pieces_[static_cast<size_t>(i)].eval(x_global - centers_[static_cast<size_t>(i)], deriv);
}

}  // namespace fsm
