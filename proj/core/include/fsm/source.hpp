#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "fsm/series.hpp"

namespace fsm {

/// f(x) = sum_j coeffs[j] * (x/a)^j in the centered frame of the problem.
struct PolynomialSource {
  std::vector<double> coeffs;
};

/// f(x) = strength * delta(x - position); position strictly inside (-a, a).
struct DiracDeltaSource {
  double position = 0.0;
  double strength = 1.0;
};

/// Constant pulse of total area `area` on [center - half_width, center + half_width],
/// height area / (2 half_width); support must lie inside the interval.
struct RectPulseSource {
  double center = 0.0;
  double half_width = 0.1;
  double area = 1.0;
};

/// Arbitrary pointwise-evaluable source; Fourier coefficients via adaptive
/// composite Simpson quadrature.
struct SampledSource {
  std::function<double(double)> f;
};

using SourceModel =
    std::variant<PolynomialSource, DiracDeltaSource, RectPulseSource, SampledSource>;

/// Throws SourceError if the source violates its admissibility rules on [-a, a].
void validate_source(const SourceModel& s, double a);

/// True unless the source contains a Dirac delta.
bool pointwise_evaluable(const SourceModel& s);

/// Pointwise value; throws SourceError for Dirac deltas.
double eval_source(const SourceModel& s, double x, double a);

/// Unweighted Fourier coefficients of the source on [-a, a]:
/// V1m = (1/a) Int f cos(alpha_m x) dx and likewise V2m. Analytic for
/// polynomial / delta / pulse variants, adaptive quadrature for sampled ones.
TrigSeries1D fourier_coeffs(const SourceModel& s, double a, int modes);

/// Restriction of a source given on [global_lo, global_hi] (polynomial part in
/// the centered frame of that interval) to a subinterval [lo, hi], re-expressed
/// in the subinterval's own centered frame.
SourceModel restrict_source(const SourceModel& s, double global_lo, double global_hi,
                            double lo, double hi);

/// Shifts positional data so that a source given on [lo, hi] refers to the
/// centered frame [-a, a] of that same interval.
SourceModel center_source(const SourceModel& s, double lo, double hi);

// ---------------------------------------------------------------------------
// 2D sources

struct ZeroSource2D {};

struct ConstantSource2D {
  double value = 0.0;
};

/// f(x1, x2) = g(x1) * h(x2).
struct SeparableSource2D {
  SourceModel g;
  SourceModel h;
};

struct SampledSource2D {
  std::function<double(double, double)> f;
};

using SourceModel2D =
    std::variant<ZeroSource2D, ConstantSource2D, SeparableSource2D, SampledSource2D>;

double eval_source_2d(const SourceModel2D& s, double x1, double x2, double a, double b);

/// Tensor-product analogue of fourier_coeffs; a zero source short-circuits to
/// the all-zero tensor.
TrigSeries2D fourier_coeffs_2d(const SourceModel2D& s, double a, double b, int m_modes,
                               int n_modes);

// ---------------------------------------------------------------------------
// Shared quadrature engine (exposed for the 2D edge-trace expansion).

struct ProjectionResult {
  std::vector<double> cos_coeffs;  // size modes+1
  std::vector<double> sin_coeffs;  // size modes
  bool converged = true;
  double error_estimate = 0.0;
};

/// Projects g on [-h, h] onto the full-range basis: returns unweighted V
/// coefficients computed with composite Simpson quadrature starting at
/// `base_panels` panels, doubling until successive results agree to 1e-10
/// relative or `max_doublings` is reached.
ProjectionResult project_fourier(const std::function<double(double)>& g, double h, int modes,
                                 int base_panels, int max_doublings = 6);

}  // namespace fsm
