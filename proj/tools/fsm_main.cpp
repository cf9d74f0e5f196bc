// Command-line front end: parse a problem or experiment description, run the
// requested pipeline, write CSV/JSON outputs. Exit codes: 0 success, 1 solver
// error, 2 configuration/usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fsm/experiments.hpp"
#include "fsm/json_io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string default_outdir() {
  const char* env = std::getenv("FSM_OUT_DIR");
  return env && *env ? env : "out";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fsm::Error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run_solve1d(const std::string& config, int m_override, int n1s_override,
                const std::string& method_override, const std::string& outdir, int samples) {
  fsm::Problem1D prob;
  try {
    prob = fsm::parse_problem_1d(read_file(config));
    if (m_override > 0) prob.modes = m_override;
    if (n1s_override >= 0) prob.supplementary_order = n1s_override;
    if (!method_override.empty()) {
      if (method_override == "fccm") {
        prob.method = fsm::ParticularMethod::fccm;
      } else if (method_override == "cm") {
        prob.method = fsm::ParticularMethod::cm;
      } else {
        throw ConfigError("unknown method '" + method_override + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const fsm::Error& e) {
    throw ConfigError(e.what());
  }
  const auto sol = fsm::solve_1d(prob.params, prob.source, prob.supplementary_order, prob.bc,
                                 prob.modes, prob.method);
  fs::create_directories(outdir);
  std::ofstream(fs::path(outdir) / "solution.json") << fsm::solution_to_json(sol) << '\n';
  const double mid = 0.5 * (prob.interval_lo + prob.interval_hi);
  fsm::write_profile_csv((fs::path(outdir) / "profile.csv").string(),
                         [&sol, mid](double x, int k) { return sol.eval(x - mid, k); },
                         prob.interval_lo, prob.interval_hi, samples);
  std::cout << "solve1d: wrote " << outdir << "/solution.json and profile.csv\n";
  return 0;
}

int run_solve2d(const std::string& config, int m_override, int n_override,
                const std::string& outdir, int grid) {
  fsm::Problem2D prob;
  try {
    prob = fsm::parse_problem_2d(read_file(config));
    if (m_override > 0) prob.m_modes = m_override;
    if (n_override > 0) prob.n_modes = n_override;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const fsm::Error& e) {
    throw ConfigError(e.what());
  }
  const auto sol = fsm::solve_2d(prob.params, prob.source, prob.bc, prob.m_modes, prob.n_modes);
  fs::create_directories(outdir);
  std::ofstream(fs::path(outdir) / "solution.json") << fsm::solution_to_json(sol) << '\n';
  fsm::write_field_csv((fs::path(outdir) / "field.csv").string(),
                       [&sol](double x1, double x2, int k1, int k2) {
                         return sol.eval(x1, x2, k1, k2);
                       },
                       prob.params.a, prob.params.b, grid);
  std::cout << "solve2d: wrote " << outdir << "/solution.json and field.csv"
            << (sol.diagnostics().poorly_resolved ? " (warning: boundary residual large)" : "")
            << '\n';
  return 0;
}

template <typename Exp, typename Runner>
int run_suite(const std::vector<Exp>& table, const std::string& id, const std::string& outdir,
              int jobs, Runner runner) {
  std::vector<const Exp*> todo;
  if (id == "all") {
    for (const auto& e : table) todo.push_back(&e);
  } else {
    for (const auto& e : table) {
      if (e.id == id) todo.push_back(&e);
    }
    if (todo.empty()) throw ConfigError("unknown experiment id '" + id + "'");
  }
  if (jobs <= 1 || todo.size() == 1) {
    for (const auto* e : todo) runner(*e);
  } else {
    std::vector<std::future<void>> futures;
    size_t next = 0;
    while (next < todo.size() || !futures.empty()) {
      while (static_cast<int>(futures.size()) < jobs && next < todo.size()) {
        const Exp* e = todo[next++];
        futures.push_back(std::async(std::launch::async, [e, &runner] { runner(*e); }));
      }
      futures.front().get();
      futures.erase(futures.begin());
    }
  }
  std::cout << "wrote " << todo.size() << " experiment director"
            << (todo.size() == 1 ? "y" : "ies") << " under " << outdir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier series multiscale solver for the convection-diffusion-reaction equation"};
  app.require_subcommand(1);
  std::string outdir = default_outdir();

  // solve1d
  auto* s1 = app.add_subcommand("solve1d", "solve a 1D problem from JSON");
  std::string s1_config, s1_method;
  int s1_m = 0, s1_n1s = -1, s1_samples = 1001;
  s1->add_option("--config", s1_config, "problem JSON")->required();
  s1->add_option("--M", s1_m, "mode count override");
  s1->add_option("--N1s", s1_n1s, "supplementary order override");
  s1->add_option("--method", s1_method, "fccm or cm");
  s1->add_option("--out", outdir, "output directory");
  s1->add_option("--samples", s1_samples, "profile sample count");

  // solve2d
  auto* s2 = app.add_subcommand("solve2d", "solve a 2D problem from JSON");
  std::string s2_config;
  int s2_m = 0, s2_n = 0, s2_grid = 101;
  s2->add_option("--config", s2_config, "problem JSON")->required();
  s2->add_option("--M", s2_m, "x1 mode count override");
  s2->add_option("--N", s2_n, "x2 mode count override");
  s2->add_option("--out", outdir, "output directory");
  s2->add_option("--grid", s2_grid, "field grid per axis");

  // green1d
  auto* g1 = app.add_subcommand("green1d", "quasi-Green point-source study on [0, 1]");
  double g_pe = 30.0, g_da = 1.0;
  g1->add_option("--pe", g_pe, "Peclet number");
  g1->add_option("--da", g_da, "Damkohler number");
  g1->add_option("--out", outdir, "output directory");

  // convergence suites
  auto* c1 = app.add_subcommand("convergence1d", "1D comparative convergence experiments");
  std::string c1_id = "all";
  int jobs = 1;
  c1->add_option("--experiment", c1_id, "experiment id (1a..4b) or 'all'");
  c1->add_option("--out", outdir, "output directory");
  c1->add_option("--jobs", jobs, "parallel experiment ids");

  auto* c2 = app.add_subcommand("convergence2d", "2D inverse-validation experiments");
  std::string c2_id = "all";
  c2->add_option("--experiment", c2_id, "experiment id (1a..4c, nm1, nm2) or 'all'");
  c2->add_option("--out", outdir, "output directory");
  c2->add_option("--jobs", jobs, "parallel experiment ids");

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check", "compare the series solver with the FD oracle");
  std::string oc_id = "1a";
  int oc_dim = 1, oc_nodes = 0;
  oc->add_option("--experiment", oc_id, "experiment id");
  oc->add_option("--dim", oc_dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  oc->add_option("--nodes", oc_nodes, "oracle grid nodes per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s1->parsed()) return run_solve1d(s1_config, s1_m, s1_n1s, s1_method, outdir, s1_samples);
    if (s2->parsed()) return run_solve2d(s2_config, s2_m, s2_n, outdir, s2_grid);
    if (g1->parsed()) {
      fsm::GreenConfig cfg;
      cfg.Pe = g_pe;
      cfg.Da = g_da;
      fsm::run_green_1d(cfg, outdir);
      std::cout << "green1d: wrote profiles under " << outdir << '\n';
      return 0;
    }
    if (c1->parsed()) {
      return run_suite(fsm::table_experiments_1d(), c1_id, outdir, jobs,
                       [&outdir](const fsm::Experiment1D& e) {
                         fsm::run_convergence_1d(e, outdir);
                       });
    }
    if (c2->parsed()) {
      return run_suite(fsm::table_experiments_2d(), c2_id, outdir, jobs,
                       [&outdir](const fsm::Experiment2D& e) {
                         fsm::run_convergence_2d(e, outdir);
                       });
    }
    if (oc->parsed()) {
      fsm::OracleCheck check;
      if (oc_dim == 1) {
        const fsm::Experiment1D* exp = nullptr;
        try {
          exp = &fsm::find_experiment_1d(oc_id);
        } catch (const fsm::Error& e) {
          throw ConfigError(e.what());
        }
        check = fsm::oracle_check_1d(*exp, 40, oc_nodes > 0 ? oc_nodes : 20001);
      } else {
        const fsm::Experiment2D* exp = nullptr;
        try {
          exp = &fsm::find_experiment_2d(oc_id);
        } catch (const fsm::Error& e) {
          throw ConfigError(e.what());
        }
        check = fsm::oracle_check_2d(*exp, 40, oc_nodes > 0 ? oc_nodes : 401);
      }
      std::cout << "oracle-check " << oc_dim << "d experiment " << oc_id
                << ": max interior disagreement " << fsm::fmt17(check.disagreement)
                << " (tolerance " << check.tolerance << ") -> "
                << (check.pass ? "OK" : "MISMATCH") << '\n';
      return check.pass ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fsm::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
