#include "fsm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fsm/json_io.hpp"
#include "json.hpp"

namespace fsm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double region_error(const std::vector<double>& err, const std::vector<double>& ref) {
  double emax = 0.0, rmax = 0.0;
  for (double e : err) emax = std::max(emax, e);
  for (double r : ref) rmax = std::max(rmax, r);
  return rmax < 1e-14 ? emax : emax / rmax;
}

void write_curve_csv(const std::string& path, const ConvergenceCurve& curve, bool corner) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  const char* ks1d[3] = {"0", "1", "2"};
  const char* ks2d[3] = {"00", "10", "01"};
  out << "M,N";
  for (int k = 0; k < 3; ++k) {
    const char* kk = corner ? ks2d[k] : ks1d[k];
    out << ",overall_" << kk << ",internal_" << kk << ",boundary_" << kk;
    if (corner) out << ",corner_" << kk;
  }
  out << '\n';
  for (const auto& pt : curve) {
    out << pt.m << ',' << pt.n;
    for (int k = 0; k < 3; ++k) {
      const auto& e = pt.report.k[static_cast<size_t>(k)];
      out << ',' << fmt17(e.overall) << ',' << fmt17(e.internal) << ',' << fmt17(e.boundary);
      if (corner) out << ',' << fmt17(e.corner);
    }
    out << '\n';
  }
}

}  // namespace

ErrorReport measure_errors_1d(const Profile1D& sol, const Profile1D& ref, double a, int samples) {
  ErrorReport rep;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> err_all, ref_all, err_in, ref_in, err_b, ref_b;
    for (int i = 0; i < samples; ++i) {
      const double x = -a + 2.0 * a * i / (samples - 1);
      const double r = ref(x, k);
      const double e = std::abs(sol(x, k) - r);
      err_all.push_back(e);
      ref_all.push_back(std::abs(r));
      if (i == 0 || i == samples - 1) {
        err_b.push_back(e);
        ref_b.push_back(std::abs(r));
      } else {
        err_in.push_back(e);
        ref_in.push_back(std::abs(r));
      }
    }
    auto& entry = rep.k[static_cast<size_t>(k)];
    entry.overall = region_error(err_all, ref_all);
    entry.internal = region_error(err_in, ref_in);
    entry.boundary = region_error(err_b, ref_b);
  }
  return rep;
}

ErrorReport measure_errors_2d(const Field2D& sol, const Field2D& ref, double a, double b,
                              int grid) {
  ErrorReport rep;
  const std::array<std::array<int, 2>, 3> orders{{{0, 0}, {1, 0}, {0, 1}}};
  for (int k = 0; k < 3; ++k) {
    const int k1 = orders[static_cast<size_t>(k)][0], k2 = orders[static_cast<size_t>(k)][1];
    std::vector<double> err_all, ref_all, err_in, ref_in, err_b, ref_b, err_c, ref_c;
    for (int j = 0; j < grid; ++j) {
      const double x2 = -b + 2.0 * b * j / (grid - 1);
      for (int i = 0; i < grid; ++i) {
        const double x1 = -a + 2.0 * a * i / (grid - 1);
        const double r = ref(x1, x2, k1, k2);
        const double e = std::abs(sol(x1, x2, k1, k2) - r);
        err_all.push_back(e);
        ref_all.push_back(std::abs(r));
        const bool edge1 = (i == 0 || i == grid - 1);
        const bool edge2 = (j == 0 || j == grid - 1);
        if (edge1 && edge2) {
          err_c.push_back(e);
          ref_c.push_back(std::abs(r));
        } else if (edge1 || edge2) {
          err_b.push_back(e);
          ref_b.push_back(std::abs(r));
        }
        if (std::abs(x1) <= a * (1.0 - 1.0 / 100.0) && std::abs(x2) <= b * (1.0 - 1.0 / 100.0)) {
          err_in.push_back(e);
          ref_in.push_back(std::abs(r));
        }
      }
    }
    auto& entry = rep.k[static_cast<size_t>(k)];
    entry.overall = region_error(err_all, ref_all);
    entry.internal = region_error(err_in, ref_in);
    entry.boundary = region_error(err_b, ref_b);
    entry.corner = region_error(err_c, ref_c);
  }
  return rep;
}

const std::vector<int>& default_mode_sequence() {
  static const std::vector<int> seq{2, 3, 5, 10, 20, 30, 40};
  return seq;
}

// ---------------------------------------------------------------------------
// 1D experiment registry

SourceModel benchmark_source_cubic() {
  return PolynomialSource{{1e3, 2e3, 5e3, 1e4}};
}
SourceModel benchmark_source_constant() { return PolynomialSource{{1e3}}; }
SourceModel benchmark_source_linear() { return PolynomialSource{{1e3, 2e3}}; }

const std::vector<Experiment1D>& table_experiments_1d() {
  static const std::vector<Experiment1D> all = [] {
    const BcPair1D dd{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};
    const BcPair1D dn{{BcKind::dirichlet, 1.0}, {BcKind::neumann, 1.0}};
    std::vector<Experiment1D> v;
    v.push_back({"1a", dd, 3, 90, 0, ParticularMethod::fccm});
    v.push_back({"1b", dd, 3, 90, 0, ParticularMethod::cm});
    v.push_back({"2a", dd, 3, 90, 0, ParticularMethod::fccm});
    v.push_back({"2b", dd, 3, 90, 1, ParticularMethod::fccm});
    v.push_back({"2c", dd, 3, 90, 2, ParticularMethod::fccm});
    v.push_back({"3a", dd, 3, 90, 0, ParticularMethod::fccm});
    v.push_back({"3b", dd, 1, 30, 0, ParticularMethod::fccm});
    v.push_back({"3c", dd, 30, 1, 0, ParticularMethod::fccm});
    v.push_back({"3d", dd, 200, -1, 0, ParticularMethod::fccm});
    v.push_back({"4a", dd, 3, 90, 0, ParticularMethod::fccm});
    v.push_back({"4b", dn, 3, 90, 0, ParticularMethod::fccm});
    return v;
  }();
  return all;
}

const Experiment1D& find_experiment_1d(const std::string& id) {
  for (const auto& e : table_experiments_1d()) {
    if (e.id == id) return e;
  }
  throw Error("unknown 1D experiment id '" + id + "'");
}

CdrParams1D experiment_params_1d(const Experiment1D& e) { return {e.Pe, e.Da, 1.0}; }

FsmSolution1D exact_reference_1d(const Experiment1D& e) {
  return solve_1d(experiment_params_1d(e), benchmark_source_cubic(), 3, e.bc, 1,
                  ParticularMethod::fccm);
}

ConvergenceCurve run_convergence_1d(const Experiment1D& e, const std::string& outdir,
                                    const std::vector<int>& modes) {
  const CdrParams1D p = experiment_params_1d(e);
  const SourceModel f = benchmark_source_cubic();
  const FsmSolution1D exact = exact_reference_1d(e);
  const Profile1D ref = [&exact](double x, int k) { return exact.eval(x, k); };

  ConvergenceCurve curve;
  double last_rf = 1.0, last_mode_cond = 1.0;
  for (int m : modes) {
    const FsmSolution1D sol = solve_1d(p, f, e.supplementary_order, e.bc, m, e.method);
    const Profile1D s = [&sol](double x, int k) { return sol.eval(x, k); };
    curve.push_back({m, 0, measure_errors_1d(s, ref, p.a)});
    last_rf = sol.diagnostics().rf_condition;
    last_mode_cond = sol.diagnostics().mode_condition;
  }

  if (!outdir.empty()) {
    const fs::path dir = fs::path(outdir) / e.id;
    fs::create_directories(dir);
    write_curve_csv((dir / "curve.csv").string(), curve, false);
    json meta;
    meta["experiment"] = e.id;
    meta["config"] = {{"Pe", e.Pe},
                      {"Da", e.Da},
                      {"N1s", e.supplementary_order},
                      {"method", e.method == ParticularMethod::fccm ? "fccm" : "cm"},
                      {"bc", {{"left", e.bc.left.kind == BcKind::dirichlet ? "D" : "N"},
                              {"right", e.bc.right.kind == BcKind::dirichlet ? "D" : "N"}}},
                      {"modes", modes}};
    meta["diagnostics"] = {{"rf_condition", last_rf}, {"mode_condition", last_mode_cond}};
    std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Quasi-Green problem

GreenResult run_green_1d(const GreenConfig& cfg, const std::string& outdir) {
  GreenResult result;
  const double mid = cfg.position;
  const BcPair1D outer{{BcKind::dirichlet, 1.0}, {BcKind::dirichlet, 0.0}};

  for (int m : cfg.whole_modes) {
    const CdrParams1D p{cfg.Pe, cfg.Da, 0.5};
    const SourceModel f = DiracDeltaSource{mid - 0.5, cfg.strength};  // centered frame of [0,1]
    result.whole.emplace(m, solve_1d(p, f, 0, outer, m, ParticularMethod::fccm));
  }
  for (double a2 : cfg.pulse_half_widths) {
    MultiDomainSpec spec;
    spec.breakpoints = {0.0, mid - a2, mid + a2, 1.0};
    spec.schemes = {SubdomainScheme{1, 8, ParticularMethod::fccm}};
    const SourceModel f = RectPulseSource{mid, a2, cfg.strength};  // global coordinates
    result.sub.emplace(a2, solve_multidomain(cfg.Pe, cfg.Da, spec, f, outer));
  }

  if (!outdir.empty()) {
    const fs::path dir(outdir);
    fs::create_directories(dir);
    char name[64];
    for (const auto& [m, sol] : result.whole) {
      std::snprintf(name, sizeof name, "whole_M%d.csv", m);
      write_profile_csv((dir / name).string(),
                        [&sol, mid](double x, int k) { return sol.eval(x - mid, k); }, 0.0, 1.0,
                        cfg.profile_samples);
    }
    json meta;
    meta["Pe"] = cfg.Pe;
    meta["Da"] = cfg.Da;
    for (const auto& [a2, sol] : result.sub) {
      std::snprintf(name, sizeof name, "sub_a2_%g.csv", a2);
      write_profile_csv((dir / name).string(),
                        [&sol](double x, int k) { return sol.eval(x, k); }, 0.0, 1.0,
                        cfg.profile_samples);
      std::snprintf(name, sizeof name, "%g", a2);
      meta["interface_values"][name] = sol.endpoint_values();
      // total flux Pe phi - phi' just outside the pulse
      const double xl = mid - a2, xr = mid + a2;
      const double jump = (cfg.Pe * sol.eval(xr, 0) - sol.eval(xr, 1)) -
                          (cfg.Pe * sol.eval(xl, 0) - sol.eval(xl, 1));
      meta["flux_jump"][name] = jump;
    }
    std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
  }
  return result;
}

// ---------------------------------------------------------------------------
// 2D experiment registry

const std::vector<Experiment2D>& table_experiments_2d() {
  static const std::vector<Experiment2D> all = [] {
    const double t3 = M_PI / 3.0;
    std::vector<Experiment2D> v;
    v.push_back({"1a", "DDDD", 3, 90, t3, 1.0});
    v.push_back({"1b", "DDDD", 1, 30, t3, 1.0});
    v.push_back({"1c", "DDDD", 30, 1, t3, 1.0});
    v.push_back({"1d", "DDDD", 200, -1, t3, 1.0});
    v.push_back({"2a", "DDDD", 3, 90, t3, 1.0});
    v.push_back({"2b", "DDDD", 3, 90, M_PI / 4.0, 1.0});
    v.push_back({"2c", "DDDD", 3, 90, M_PI / 6.0, 1.0});
    v.push_back({"2d", "DDDD", 3, 90, 0.0, 1.0});
    v.push_back({"3a", "DDDD", 3, 90, t3, 1.0});
    v.push_back({"3b", "DDDD", 3, 90, t3, 0.67});
    v.push_back({"3c", "DDDD", 3, 90, t3, 0.50});
    v.push_back({"3d", "DDDD", 3, 90, t3, 1.25});
    v.push_back({"3e", "DDDD", 3, 90, t3, 2.0});
    v.push_back({"4a", "DDDD", 3, 90, t3, 1.0});
    v.push_back({"4b", "DDND", 3, 90, t3, 1.0});
    v.push_back({"4c", "DNND", 3, 90, t3, 1.0});
    v.push_back({"nm1", "DDDD", 3, 90, t3, 0.50, 1.0});
    v.push_back({"nm2", "DDDD", 3, 90, t3, 0.50, 2.0});
    return v;
  }();
  return all;
}

const Experiment2D& find_experiment_2d(const std::string& id) {
  for (const auto& e : table_experiments_2d()) {
    if (e.id == id) return e;
  }
  throw Error("unknown 2D experiment id '" + id + "'");
}

CdrParams2D experiment_params_2d(const Experiment2D& e) {
  return {e.Pe, e.Da, e.theta, 1.0, 1.0 / e.ratio};
}

EdgeBcSpec reference_bc(const CdrParams2D& p, const ReferenceField2D& ref,
                        const std::string& pattern) {
  if (pattern.size() != 4) throw Error("boundary pattern must have 4 letters");
  EdgeBcSpec bc;
  struct Def {
    EdgeBc* slot;
    bool along_x1;
    double fixed;
    double outward;
  };
  const Def defs[4] = {
      {&bc.left, false, -p.a, -1.0},
      {&bc.right, false, p.a, 1.0},
      {&bc.bottom, true, -p.b, -1.0},
      {&bc.top, true, p.b, 1.0},
  };
  for (int i = 0; i < 4; ++i) {
    const char c = pattern[static_cast<size_t>(i)];
    if (c != 'D' && c != 'N') throw Error("boundary pattern letters must be D or N");
    const Def& d = defs[i];
    d.slot->kind = c == 'D' ? BcKind::dirichlet : BcKind::neumann;
    const bool neumann = c == 'N';
    const bool along_x1 = d.along_x1;
    const double fixed = d.fixed;
    const double outward = d.outward;
    d.slot->data = [&ref, neumann, along_x1, fixed, outward](double t) {
      const double x1 = along_x1 ? t : fixed;
      const double x2 = along_x1 ? fixed : t;
      if (!neumann) return ref.eval(x1, x2, 0, 0);
      return outward * (along_x1 ? ref.eval(x1, x2, 0, 1) : ref.eval(x1, x2, 1, 0));
    };
  }
  return bc;
}

ConvergenceCurve run_convergence_2d(const Experiment2D& e, const std::string& outdir,
                                    const std::vector<int>& modes) {
  const CdrParams2D p = experiment_params_2d(e);
  const ReferenceField2D ref(p);
  const EdgeBcSpec bc = reference_bc(p, ref, e.pattern);
  const Field2D rf = [&ref](double x1, double x2, int k1, int k2) {
    return ref.eval(x1, x2, k1, k2);
  };

  ConvergenceCurve curve;
  Diagnostics2D last_diag;
  const fs::path dir = fs::path(outdir.empty() ? "." : outdir) / e.id;
  for (size_t i = 0; i < modes.size(); ++i) {
    const int m = modes[i];
    const int n = std::max(1, static_cast<int>(std::lround(m * e.n_over_m)));
    const FsmSolution2D sol = solve_2d(p, ZeroSource2D{}, bc, m, n);
    const Field2D sf = [&sol](double x1, double x2, int k1, int k2) {
      return sol.eval(x1, x2, k1, k2);
    };
    curve.push_back({m, n, measure_errors_2d(sf, rf, p.a, p.b)});
    last_diag = sol.diagnostics();
    if (!outdir.empty() && i + 1 == modes.size()) {
      fs::create_directories(dir / "fields");
      write_field_csv((dir / "fields" / "computed.csv").string(), sf, p.a, p.b, 101);
      write_field_csv((dir / "fields" / "reference.csv").string(), rf, p.a, p.b, 101);
    }
  }

  if (!outdir.empty()) {
    fs::create_directories(dir);
    write_curve_csv((dir / "curve.csv").string(), curve, true);
    json meta;
    meta["experiment"] = e.id;
    meta["config"] = {{"Pe", e.Pe},     {"Da", e.Da},       {"theta", e.theta},
                      {"ratio", e.ratio}, {"pattern", e.pattern}, {"n_over_m", e.n_over_m}};
    meta["diagnostics"] = {{"residual_norm", last_diag.residual_norm},
                           {"condition", last_diag.condition},
                           {"rank", last_diag.rank},
                           {"poorly_resolved", last_diag.poorly_resolved}};
    std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
  }
  return curve;
}

// ---------------------------------------------------------------------------
// FD cross-checks

OracleCheck oracle_check_1d(const Experiment1D& e, int modes, int nodes) {
  const CdrParams1D p = experiment_params_1d(e);
  const FsmSolution1D sol =
      solve_1d(p, benchmark_source_cubic(), e.supplementary_order, e.bc, modes, e.method);
  const FdGrid1D fd = fd_solve_1d(p, benchmark_source_cubic(), e.bc, nodes);
  double emax = 0.0, rmax = 0.0;
  for (int i = 1; i + 1 < fd.nodes(); ++i) {
    emax = std::max(emax, std::abs(sol.eval(fd.x(i), 0) - fd.values[static_cast<size_t>(i)]));
    rmax = std::max(rmax, std::abs(fd.values[static_cast<size_t>(i)]));
  }
  OracleCheck c{emax / std::max(rmax, 1e-14), 1e-3, false};
  c.pass = c.disagreement <= c.tolerance;
  return c;
}

OracleCheck oracle_check_2d(const Experiment2D& e, int modes, int nodes) {
  const CdrParams2D p = experiment_params_2d(e);
  const ReferenceField2D ref(p);
  const EdgeBcSpec bc = reference_bc(p, ref, e.pattern);
  const int n2 = std::max(1, static_cast<int>(std::lround(modes * e.n_over_m)));
  const FsmSolution2D sol = solve_2d(p, ZeroSource2D{}, bc, modes, n2);
  const FdGrid2D fd = fd_solve_2d(p, ZeroSource2D{}, bc, nodes);
  double emax = 0.0, rmax = 0.0;
  for (int j = 1; j + 1 < fd.n; ++j) {
    for (int i = 1; i + 1 < fd.n; ++i) {
      emax = std::max(emax, std::abs(sol.eval(fd.x1(i), fd.x2(j), 0, 0) - fd.at(i, j)));
      rmax = std::max(rmax, std::abs(fd.at(i, j)));
    }
  }
  OracleCheck c{emax / std::max(rmax, 1e-14), 5e-3, false};
  c.pass = c.disagreement <= c.tolerance;
  return c;
}

}  // namespace fsm
