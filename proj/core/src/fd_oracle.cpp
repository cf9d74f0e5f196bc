#include "fsm/fd_oracle.hpp"

#include <Eigen/Sparse>
#include <cmath>

namespace fsm {

namespace {

template <typename Real>
std::vector<Real> thomas_solve(std::vector<Real> lower, std::vector<Real> diag,
                               std::vector<Real> upper, std::vector<Real> rhs) {
  const size_t n = diag.size();
  for (size_t i = 1; i < n; ++i) {
    const Real w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<Real> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) {
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  }
  return x;
}

template <typename Real>
std::vector<Real> fd_core_1d(const CdrParams1D& p, const SourceModel& f, const BcPair1D& bc,
                             int nodes) {
  if (nodes < 3) throw Error("finite-difference grid needs at least 3 nodes");
  const Real a = static_cast<Real>(p.a);
  const Real h = 2 * a / (nodes - 1);
  if (std::abs(p.Pe) * static_cast<double>(h) / 2.0 >= 1.0) {
    const long required = static_cast<long>(std::ceil(std::abs(p.Pe) * p.a)) + 2;
    throw StabilityError("grid too coarse for central convection differencing", required);
  }
  const Real pe = static_cast<Real>(p.Pe);
  const Real peda = static_cast<Real>(p.Pe) * static_cast<Real>(p.Da);
  const size_t n = static_cast<size_t>(nodes);

  std::vector<Real> lo(n, Real(0)), di(n, Real(0)), up(n, Real(0)), rhs(n, Real(0));
  const Real cl = -pe / (2 * h) - 1 / (h * h);
  const Real cd = 2 / (h * h) - peda;
  const Real cu = pe / (2 * h) - 1 / (h * h);
  for (size_t i = 1; i + 1 < n; ++i) {
    lo[i] = cl;
    di[i] = cd;
    up[i] = cu;
  }

  // Source samples; a Dirac delta becomes the standard hat allocation on its
  // bracketing nodes (second-order consistent).
  if (const auto* d = std::get_if<DiracDeltaSource>(&f)) {
    const Real x0 = static_cast<Real>(d->position);
    const auto j = static_cast<size_t>(static_cast<double>((x0 + a) / h));
    const Real w = (x0 - (-a + h * static_cast<Real>(j))) / h;
    rhs[j] += static_cast<Real>(d->strength) * (1 - w) / h;
    if (j + 1 < n) rhs[j + 1] += static_cast<Real>(d->strength) * w / h;
  } else {
    for (size_t i = 1; i + 1 < n; ++i) {
      rhs[i] = static_cast<Real>(
          eval_source(f, static_cast<double>(-a + h * static_cast<Real>(i)), p.a));
    }
  }

  // Boundary rows; Neumann rows are one-sided second order and their third
  // entry is eliminated against the first interior row to stay tridiagonal.
  if (bc.left.kind == BcKind::dirichlet) {
    di[0] = 1;
    rhs[0] = static_cast<Real>(bc.left.value);
  } else {
    Real c0 = -3 / (2 * h), c1 = 4 / (2 * h), c2 = -1 / (2 * h);
    Real r = static_cast<Real>(bc.left.value);
    const Real w = c2 / up[1];
    c0 -= w * lo[1];
    c1 -= w * di[1];
    r -= w * rhs[1];
    di[0] = c0;
    up[0] = c1;
    rhs[0] = r;
  }
  if (bc.right.kind == BcKind::dirichlet) {
    di[n - 1] = 1;
    rhs[n - 1] = static_cast<Real>(bc.right.value);
  } else {
    Real c0 = 3 / (2 * h), c1 = -4 / (2 * h), c2 = 1 / (2 * h);
    Real r = static_cast<Real>(bc.right.value);
    const Real w = c2 / lo[n - 2];
    c0 -= w * up[n - 2];
    c1 -= w * di[n - 2];
    r -= w * rhs[n - 2];
    di[n - 1] = c0;
    lo[n - 1] = c1;
    rhs[n - 1] = r;
  }
  return thomas_solve(std::move(lo), std::move(di), std::move(up), std::move(rhs));
}

}  // namespace

FdGrid1D fd_solve_1d(const CdrParams1D& p, const SourceModel& f, const BcPair1D& bc, int nodes) {
  FdGrid1D g;
  g.a = p.a;
  const auto v = fd_core_1d<double>(p, f, bc, nodes);
  g.values.assign(v.begin(), v.end());
  return g;
}

FdGrid1D fd_solve_1d_extrapolated(const CdrParams1D& p, const SourceModel& f, const BcPair1D& bc,
                                  int base_nodes, int levels) {
  if (levels < 1) throw Error("extrapolation needs at least one level");
  // T[k] on the base grid, from node counts (base-1)*2^k + 1.
  std::vector<std::vector<long double>> t(static_cast<size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    const int stride = 1 << k;
    const int nodes = (base_nodes - 1) * stride + 1;
    const auto fine = fd_core_1d<long double>(p, f, bc, nodes);
    auto& coarse = t[static_cast<size_t>(k)];
    coarse.resize(static_cast<size_t>(base_nodes));
    for (int i = 0; i < base_nodes; ++i) {
      coarse[static_cast<size_t>(i)] = fine[static_cast<size_t>(i) * stride];
    }
  }
  for (int j = 1; j < levels; ++j) {
    const long double w = std::pow(4.0L, j);
    for (int k = levels - 1; k >= j; --k) {
      for (size_t i = 0; i < t[static_cast<size_t>(k)].size(); ++i) {
        t[static_cast<size_t>(k)][i] =
            (w * t[static_cast<size_t>(k)][i] - t[static_cast<size_t>(k - 1)][i]) / (w - 1);
      }
    }
  }
  FdGrid1D g;
  g.a = p.a;
  g.values.assign(t.back().begin(), t.back().end());
  return g;
}

FdGrid2D fd_solve_2d(const CdrParams2D& p, const SourceModel2D& f, const EdgeBcSpec& bc,
                     int nodes_per_axis) {
  const int n = nodes_per_axis;
  if (n < 3) throw Error("finite-difference grid needs at least 3 nodes per axis");
  const double h1 = 2.0 * p.a / (n - 1);
  const double h2 = 2.0 * p.b / (n - 1);
  if (std::abs(p.pe1()) * h1 / 2.0 >= 1.0 || std::abs(p.pe2()) * h2 / 2.0 >= 1.0) {
    const long required =
        static_cast<long>(std::ceil(std::max(std::abs(p.pe1()) * p.a, std::abs(p.pe2()) * p.b))) +
        2;
    throw StabilityError("grid too coarse for central convection differencing", required);
  }
  const double pe1 = p.pe1(), pe2 = p.pe2(), peda = p.Pe * p.Da;
  const auto id = [n](int i, int j) { return j * n + i; };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(5) * n * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * n);

  auto x1 = [&](int i) { return -p.a + h1 * i; };
  auto x2 = [&](int j) { return -p.b + h2 * j; };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = id(i, j);
      const bool on_l = i == 0, on_r = i == n - 1, on_b = j == 0, on_t = j == n - 1;
      if (!(on_l || on_r || on_b || on_t)) {
        trip.emplace_back(row, id(i - 1, j), -pe1 / (2 * h1) - 1 / (h1 * h1));
        trip.emplace_back(row, id(i + 1, j), pe1 / (2 * h1) - 1 / (h1 * h1));
        trip.emplace_back(row, id(i, j - 1), -pe2 / (2 * h2) - 1 / (h2 * h2));
        trip.emplace_back(row, id(i, j + 1), pe2 / (2 * h2) - 1 / (h2 * h2));
        trip.emplace_back(row, id(i, j), 2 / (h1 * h1) + 2 / (h2 * h2) - peda);
        rhs(row) = eval_source_2d(f, x1(i), x2(j), p.a, p.b);
        continue;
      }
      // Pick the governing edge: x1 edges first when Dirichlet, mirroring the
      // corner priority of the series assembly.
      const EdgeBc* e = nullptr;
      enum class Side { l, r, b, t } side{};
      if (on_l && bc.left.kind == BcKind::dirichlet) {
        e = &bc.left;
        side = Side::l;
      } else if (on_r && bc.right.kind == BcKind::dirichlet) {
        e = &bc.right;
        side = Side::r;
      } else if (on_b && bc.bottom.kind == BcKind::dirichlet) {
        e = &bc.bottom;
        side = Side::b;
      } else if (on_t && bc.top.kind == BcKind::dirichlet) {
        e = &bc.top;
        side = Side::t;
      } else if (on_l) {
        e = &bc.left;
        side = Side::l;
      } else if (on_r) {
        e = &bc.right;
        side = Side::r;
      } else if (on_b) {
        e = &bc.bottom;
        side = Side::b;
      } else {
        e = &bc.top;
        side = Side::t;
      }
      const double coord = (side == Side::l || side == Side::r) ? x2(j) : x1(i);
      if (e->kind == BcKind::dirichlet) {
        trip.emplace_back(row, row, 1.0);
        rhs(row) = e->data(coord);
        continue;
      }
      // One-sided second-order outward normal derivative.
      switch (side) {
        case Side::l:
          trip.emplace_back(row, id(0, j), 3 / (2 * h1));
          trip.emplace_back(row, id(1, j), -4 / (2 * h1));
          trip.emplace_back(row, id(2, j), 1 / (2 * h1));
          break;
        case Side::r:
          trip.emplace_back(row, id(n - 1, j), 3 / (2 * h1));
          trip.emplace_back(row, id(n - 2, j), -4 / (2 * h1));
          trip.emplace_back(row, id(n - 3, j), 1 / (2 * h1));
          break;
        case Side::b:
          trip.emplace_back(row, id(i, 0), 3 / (2 * h2));
          trip.emplace_back(row, id(i, 1), -4 / (2 * h2));
          trip.emplace_back(row, id(i, 2), 1 / (2 * h2));
          break;
        case Side::t:
          trip.emplace_back(row, id(i, n - 1), 3 / (2 * h2));
          trip.emplace_back(row, id(i, n - 2), -4 / (2 * h2));
          trip.emplace_back(row, id(i, n - 3), 1 / (2 * h2));
          break;
      }
      rhs(row) = e->data(coord);
    }
  }

  Eigen::SparseMatrix<double> mat(static_cast<Eigen::Index>(n) * n,
                                  static_cast<Eigen::Index>(n) * n);
  mat.setFromTriplets(trip.begin(), trip.end());
  mat.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(mat);
  if (lu.info() != Eigen::Success) {
    throw Error("sparse factorization of the 2D finite-difference system failed");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);

  FdGrid2D g;
  g.a = p.a;
  g.b = p.b;
  g.n = n;
  g.values.assign(sol.data(), sol.data() + sol.size());
  return g;
}

}  // namespace fsm
