#pragma once

#include <vector>

#include "fsm/cdr1d.hpp"

namespace fsm {

/// Per-subinterval computational scheme.
struct SubdomainScheme {
  int supplementary_order = 1;
  int modes = 8;
  ParticularMethod method = ParticularMethod::fccm;
};

/// Contiguous partition of a global interval. `schemes` holds either one entry
/// (broadcast to every subinterval) or one per subinterval.
struct MultiDomainSpec {
  std::vector<double> breakpoints;  // ascending, size = subintervals + 1 >= 3
  std::vector<SubdomainScheme> schemes{SubdomainScheme{}};
};

/// Piecewise solution; the unknown endpoint values were obtained from the
/// flux-continuity system at the internal breakpoints.
class MultiDomainSolution1D {
 public:
  double eval(double x_global, int deriv = 0) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Solution values at every breakpoint (outer ones included).
  const std::vector<double>& endpoint_values() const { return endpoint_values_; }
  const FsmSolution1D& piece(int i) const { return pieces_[static_cast<size_t>(i)]; }
  int pieces() const { return static_cast<int>(pieces_.size()); }
  double interface_condition() const { return interface_condition_; }

 private:
  friend MultiDomainSolution1D solve_multidomain(double, double, const MultiDomainSpec&,
                                                 const SourceModel&, const BcPair1D&);
  std::vector<double> breakpoints_;
  std::vector<double> centers_;
  std::vector<double> endpoint_values_;
  std::vector<FsmSolution1D> pieces_;
  double interface_condition_ = 1.0;
};

/// Solves the global problem by patching per-subinterval solutions in the
/// boundary/residual split: unknowns are the solution values at the internal
/// breakpoints (and at an outer endpoint when its condition is Neumann);
/// equations are first-derivative continuity at internal breakpoints plus the
/// outer boundary conditions. The resulting system is tridiagonal.
///
/// The source is given in global coordinates; polynomial sources refer to the
/// centered frame of the whole interval.
MultiDomainSolution1D solve_multidomain(double Pe, double Da, const MultiDomainSpec& spec,
                                        const SourceModel& f_global, const BcPair1D& outer);

}  // namespace fsm
