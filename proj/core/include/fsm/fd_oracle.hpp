#pragma once

#include <vector>

#include "fsm/cdr1d.hpp"
#include "fsm/cdr2d.hpp"

namespace fsm {

/// Uniform-grid finite-difference solution on [-a, a]; cross-validation
/// oracle only, kept independent of the series solvers.
struct FdGrid1D {
  double a = 1.0;
  std::vector<double> values;

  int nodes() const { return static_cast<int>(values.size()); }
  double h() const { return 2.0 * a / (nodes() - 1); }
  double x(int i) const { return -a + h() * i; }
};

/// Second-order central discretization; Dirichlet rows direct, Neumann rows
/// one-sided second-order. The caller must resolve the convection scale:
/// |Pe| h / 2 < 1 (central differencing stays monotone-stable on such grids,
/// which keeps the oracle second-order everywhere).
FdGrid1D fd_solve_1d(const CdrParams1D& p, const SourceModel& f, const BcPair1D& bc, int nodes);

/// Richardson-extrapolated reference on the base grid: solves on `levels`
/// nested grids (doubling resolution) in extended precision and eliminates
/// the leading error terms. levels = 3 reaches O(h^6).
FdGrid1D fd_solve_1d_extrapolated(const CdrParams1D& p, const SourceModel& f, const BcPair1D& bc,
                                  int base_nodes, int levels);

struct FdGrid2D {
  double a = 1.0, b = 1.0;
  int n = 0;  // nodes per axis
  std::vector<double> values;

  double h1() const { return 2.0 * a / (n - 1); }
  double h2() const { return 2.0 * b / (n - 1); }
  double x1(int i) const { return -a + h1() * i; }
  double x2(int j) const { return -b + h2() * j; }
  double at(int i, int j) const { return values[static_cast<size_t>(j) * n + i]; }
};

/// Five-point central discretization of the 2D operator with a sparse direct
/// solve. Neumann rows prescribe the one-sided outward normal derivative.
FdGrid2D fd_solve_2d(const CdrParams2D& p, const SourceModel2D& f, const EdgeBcSpec& bc,
                     int nodes_per_axis);

}  // namespace fsm
