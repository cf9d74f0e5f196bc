#pragma once

#include <vector>

#include "fsm/errors.hpp"

namespace fsm {

/// Mode counts of a truncated series. `n` is ignored by the 1D solver.
struct Truncation {
  int m = 1;
  int n = 1;
};

/// Truncated full-range Fourier series on [-a, a],
///
///   f(x) = sum_m mu_m [ V1m cos(alpha_m x) + V2m sin(alpha_m x) ],
///
/// with alpha_m = m*pi/a and mu_0 = 1/2, mu_m = 1 otherwise. Coefficients are
/// stored unweighted; the mu weights enter only at evaluation, so coefficient
/// comparison systems can be transcribed directly.
class TrigSeries1D {
 public:
  TrigSeries1D(double half_length, int modes);

  double half_length() const { return a_; }
  int modes() const { return static_cast<int>(sin_.size()); }

  /// V1m, m = 0..M.
  double cos_coeff(int m) const { return cos_[static_cast<size_t>(m)]; }
  /// V2m, m = 1..M.
  double sin_coeff(int m) const { return sin_[static_cast<size_t>(m - 1)]; }
  void set_cos(int m, double v) { cos_[static_cast<size_t>(m)] = v; }
  void set_sin(int m, double v) { sin_[static_cast<size_t>(m - 1)] = v; }

  /// Term-wise differentiated value; deriv in {0, 1, 2}.
  double eval(double x, int deriv = 0) const;

  /// Largest coefficient magnitude (coarse infinity-norm bound of the sum).
  double coeff_max() const;

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

 private:
  double a_;
  std::vector<double> cos_;  // size M+1
  std::vector<double> sin_;  // size M, index m-1
};

/// Parity of a 2D basis product; first letter is the x1 factor.
enum class Parity { cc, cs, sc, ss };

/// Truncated full-range double Fourier series on [-a, a] x [-b, b] with
/// mu_m * mu_n evaluation weights. Entries with m = 0 carry no sc/ss part and
/// entries with n = 0 no cs/ss part; those slots are structurally zero.
class TrigSeries2D {
 public:
  TrigSeries2D(double a, double b, int m_modes, int n_modes);

  double half_length_x1() const { return a_; }
  double half_length_x2() const { return b_; }
  int m_modes() const { return m_; }
  int n_modes() const { return n_; }

  double coeff(int m, int n, Parity p) const;
  void set_coeff(int m, int n, Parity p, double v);

  /// Term-wise differentiated value; k1 + k2 <= 2.
  double eval(double x1, double x2, int k1, int k2) const;

  double coeff_max() const;

  /// Flat storage in (m, then n, then parity cc,cs,sc,ss) order.
  const std::vector<double>& flat() const { return c_; }
  void assign_flat(const std::vector<double>& values);

 private:
  size_t idx(int m, int n, Parity p) const;
  static bool forbidden(int m, int n, Parity p);

  double a_, b_;
  int m_, n_;
  std::vector<double> c_;
};

}  // namespace fsm
