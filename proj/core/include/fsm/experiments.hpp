#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fsm/cdr1d.hpp"
#include "fsm/cdr2d.hpp"
#include "fsm/fd_oracle.hpp"
#include "fsm/multidomain.hpp"

namespace fsm {

using Profile1D = std::function<double(double, int)>;
using Field2D = std::function<double(double, double, int, int)>;

/// Max-relative errors per region. 1D slots k[0..2] are derivative orders;
/// 2D slots are the multi-indices (0,0), (1,0), (0,1). The normalizer is the
/// max reference magnitude over the same region's sample set, falling back to
/// absolute error when it vanishes.
struct ErrorEntry {
  double overall = 0.0;
  double internal = 0.0;
  double boundary = 0.0;
  double corner = 0.0;  // 2D only
};

struct ErrorReport {
  std::array<ErrorEntry, 3> k;
};

ErrorReport measure_errors_1d(const Profile1D& sol, const Profile1D& ref, double a,
                              int samples = 10001);
ErrorReport measure_errors_2d(const Field2D& sol, const Field2D& ref, double a, double b,
                              int grid = 101);

struct CurvePoint {
  int m = 0;
  int n = 0;
  ErrorReport report;
};
using ConvergenceCurve = std::vector<CurvePoint>;

/// {2, 3, 5, 10, 20, 30, 40}
const std::vector<int>& default_mode_sequence();

// ---------------------------------------------------------------------------
// 1D comparative convergence experiments (cubic benchmark source on [-1, 1])

struct Experiment1D {
  std::string id;
  BcPair1D bc;
  double Pe = 3.0, Da = 90.0;
  int supplementary_order = 0;
  ParticularMethod method = ParticularMethod::fccm;
};

const std::vector<Experiment1D>& table_experiments_1d();
const Experiment1D& find_experiment_1d(const std::string& id);

/// 1e3 + 2e3 (x/a) + 5e3 (x/a)^2 + 1e4 (x/a)^3.
SourceModel benchmark_source_cubic();
/// 1e3.
SourceModel benchmark_source_constant();
/// 1e3 + 2e3 (x/a).
SourceModel benchmark_source_linear();

CdrParams1D experiment_params_1d(const Experiment1D& e);

/// Exact solution of the benchmark problem through the order-3 interpolation
/// path (the series residual vanishes, so the result is closed form).
FsmSolution1D exact_reference_1d(const Experiment1D& e);

/// Runs the convergence sweep, writing <outdir>/<id>/curve.csv and meta.json
/// when outdir is non-empty.
ConvergenceCurve run_convergence_1d(const Experiment1D& e, const std::string& outdir,
                                    const std::vector<int>& modes = default_mode_sequence());

// ---------------------------------------------------------------------------
// Quasi-Green point-source problem on [0, 1], phi(0) = 1, phi(1) = 0

struct GreenConfig {
  double Pe = 30.0, Da = 1.0;
  double position = 0.5;
  double strength = 1000.0;
  std::vector<int> whole_modes{10, 40, 160, 640};
  std::vector<double> pulse_half_widths{1e-1, 1e-2, 1e-3, 1e-4};
  int profile_samples = 1001;
};

struct GreenResult {
  /// Whole-interval delta solves by mode count; centered frame of [0, 1].
  std::map<int, FsmSolution1D> whole;
  /// Three-subinterval pulse solves by pulse half-width; global coordinates.
  std::map<double, MultiDomainSolution1D> sub;
};

GreenResult run_green_1d(const GreenConfig& cfg, const std::string& outdir);

// ---------------------------------------------------------------------------
// 2D inverse-validation experiments

struct Experiment2D {
  std::string id;
  std::string pattern = "DDDD";  // edges left, right, bottom, top
  double Pe = 3.0, Da = 90.0;
  double theta = M_PI / 3.0;
  double ratio = 1.0;  // a/b with a = 1
  double n_over_m = 1.0;
};

const std::vector<Experiment2D>& table_experiments_2d();
const Experiment2D& find_experiment_2d(const std::string& id);

CdrParams2D experiment_params_2d(const Experiment2D& e);

/// Edge data sampled from the reference field: values on Dirichlet edges,
/// outward normal derivatives on Neumann edges.
EdgeBcSpec reference_bc(const CdrParams2D& p, const ReferenceField2D& ref,
                        const std::string& pattern);

/// Inverse-validation sweep; at the largest truncation the computed and
/// reference field grids are dumped under <outdir>/<id>/fields/.
ConvergenceCurve run_convergence_2d(const Experiment2D& e, const std::string& outdir,
                                    const std::vector<int>& modes = default_mode_sequence());

// ---------------------------------------------------------------------------
// FD cross-checks

struct OracleCheck {
  double disagreement = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleCheck oracle_check_1d(const Experiment1D& e, int modes = 40, int nodes = 20001);
OracleCheck oracle_check_2d(const Experiment2D& e, int modes = 40, int nodes = 401);

}  // namespace fsm
