#include "fsm/json_io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace fsm {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_to_json(const TrigSeries1D& s) {
  json j;
  j["a"] = s.half_length();
  j["M"] = s.modes();
  j["cos"] = s.cos_coeffs();
  j["sin"] = s.sin_coeffs();
  return j.dump();
}

TrigSeries1D series_1d_from_json(const std::string& text) {
  const json j = json::parse(text);
  TrigSeries1D s(j.at("a").get<double>(), j.at("M").get<int>());
  const auto c = j.at("cos").get<std::vector<double>>();
  const auto sn = j.at("sin").get<std::vector<double>>();
  if (c.size() != static_cast<size_t>(s.modes()) + 1 || sn.size() != static_cast<size_t>(s.modes())) {
    throw Error("series JSON: coefficient array sizes do not match M");
  }
  for (int m = 0; m <= s.modes(); ++m) s.set_cos(m, c[static_cast<size_t>(m)]);
  for (int m = 1; m <= s.modes(); ++m) s.set_sin(m, sn[static_cast<size_t>(m - 1)]);
  return s;
}

std::string series_to_json(const TrigSeries2D& s) {
  json j;
  j["a"] = s.half_length_x1();
  j["b"] = s.half_length_x2();
  j["M"] = s.m_modes();
  j["N"] = s.n_modes();
  j["coeffs"] = s.flat();
  return j.dump();
}

TrigSeries2D series_2d_from_json(const std::string& text) {
  const json j = json::parse(text);
  TrigSeries2D s(j.at("a").get<double>(), j.at("b").get<double>(), j.at("M").get<int>(),
                 j.at("N").get<int>());
  s.assign_flat(j.at("coeffs").get<std::vector<double>>());
  return s;
}

namespace {

SourceModel parse_source(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polynomial") {
    return PolynomialSource{j.at("coeffs").get<std::vector<double>>()};
  }
  if (type == "dirac") {
    return DiracDeltaSource{j.at("position").get<double>(), j.at("strength").get<double>()};
  }
  if (type == "rect_pulse") {
    return RectPulseSource{j.at("center").get<double>(), j.at("half_width").get<double>(),
                           j.at("area").get<double>()};
  }
  throw Error("unknown source type '" + type + "'");
}

BcKind parse_kind(const std::string& kind) {
  if (kind == "dirichlet" || kind == "D") return BcKind::dirichlet;
  if (kind == "neumann" || kind == "N") return BcKind::neumann;
  throw Error("unknown boundary kind '" + kind + "'");
}

}  // namespace

Problem1D parse_problem_1d(const std::string& text) {
  const json j = json::parse(text);
  Problem1D p;
  const auto interval = j.at("interval").get<std::vector<double>>();
  if (interval.size() != 2 || !(interval[1] > interval[0])) {
    throw Error("problem JSON: interval must be [lo, hi] with hi > lo");
  }
  p.interval_lo = interval[0];
  p.interval_hi = interval[1];
  p.params.Pe = j.at("Pe").get<double>();
  p.params.Da = j.at("Da").get<double>();
  p.params.a = 0.5 * (interval[1] - interval[0]);
  p.source = center_source(parse_source(j.at("source")), interval[0], interval[1]);
  const auto& bc = j.at("bc");
  p.bc.left = {parse_kind(bc.at("left").at("kind").get<std::string>()),
               bc.at("left").at("value").get<double>()};
  p.bc.right = {parse_kind(bc.at("right").at("kind").get<std::string>()),
                bc.at("right").at("value").get<double>()};
  p.modes = j.value("M", 40);
  p.supplementary_order = j.value("N1s", 0);
  const std::string method = j.value("method", "fccm");
  if (method == "fccm") {
    p.method = ParticularMethod::fccm;
  } else if (method == "cm") {
    p.method = ParticularMethod::cm;
  } else {
    throw Error("unknown method '" + method + "' (expected fccm or cm)");
  }
  return p;
}

Problem2D parse_problem_2d(const std::string& text) {
  const json j = json::parse(text);
  Problem2D p;
  p.params.a = j.at("a").get<double>();
  p.params.b = j.at("b").get<double>();
  p.params.Pe = j.at("Pe").get<double>();
  p.params.Da = j.at("Da").get<double>();
  p.params.theta = j.at("theta").get<double>();
  p.m_modes = j.value("M", 40);
  p.n_modes = j.value("N", 40);
  if (j.contains("source")) {
    const std::string type = j.at("source").at("type").get<std::string>();
    if (type == "zero") {
      p.source = ZeroSource2D{};
    } else if (type == "constant") {
      p.source = ConstantSource2D{j.at("source").at("value").get<double>()};
    } else {
      throw Error("unknown 2D source type '" + type + "'");
    }
  }

  // reference_trace edges need the reference field of these same parameters
  const auto ref = std::make_shared<ReferenceField2D>(p.params);
  const auto& bc = j.at("bc");
  struct EdgeDef {
    const char* name;
    EdgeBc* slot;
    bool along_x1;  // edge coordinate is x1
    double fixed;
    double outward;
  };
  const double a = p.params.a, b = p.params.b;
  const EdgeDef defs[4] = {
      {"left", &p.bc.left, false, -a, -1.0},
      {"right", &p.bc.right, false, a, 1.0},
      {"bottom", &p.bc.bottom, true, -b, -1.0},
      {"top", &p.bc.top, true, b, 1.0},
  };
  for (const auto& def : defs) {
    const auto& e = bc.at(def.name);
    def.slot->kind = parse_kind(e.at("kind").get<std::string>());
    const auto& data = e.at("data");
    const std::string type = data.at("type").get<std::string>();
    const double half = def.along_x1 ? a : b;
    if (type == "constant") {
      const double v = data.at("value").get<double>();
      def.slot->data = [v](double) { return v; };
    } else if (type == "polynomial") {
      const auto coeffs = data.at("coeffs").get<std::vector<double>>();
      def.slot->data = [coeffs, half](double t) {
        double v = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;) v = v * (t / half) + coeffs[k];
        return v;
      };
    } else if (type == "reference_trace") {
      const bool neumann = def.slot->kind == BcKind::neumann;
      const bool along_x1 = def.along_x1;
      const double fixed = def.fixed;
      const double outward = def.outward;
      def.slot->data = [ref, neumann, along_x1, fixed, outward](double t) {
        const double x1 = along_x1 ? t : fixed;
        const double x2 = along_x1 ? fixed : t;
        if (!neumann) return ref->eval(x1, x2, 0, 0);
        return outward * (along_x1 ? ref->eval(x1, x2, 0, 1) : ref->eval(x1, x2, 1, 0));
      };
    } else {
      throw Error("unknown 2D boundary data type '" + type + "'");
    }
  }
  return p;
}

std::string solution_to_json(const FsmSolution1D& sol) {
  json j;
  j["Pe"] = sol.params().Pe;
  j["Da"] = sol.params().Da;
  j["a"] = sol.params().a;
  j["particular"] = json::parse(series_to_json(sol.particular()));
  j["general"] = {sol.general_coeffs()[0], sol.general_coeffs()[1]};
  j["supplementary"] = {{"shift", sol.supplementary().shift}, {"coef", sol.supplementary().coef}};
  const char* regime = nullptr;
  switch (sol.basis().roots().regime) {
    case Regime::distinct_real: regime = "distinct_real"; break;
    case Regime::complex_pair: regime = "complex_pair"; break;
    case Regime::double_real: regime = "double_real"; break;
  }
  j["regime"] = regime;
  j["diagnostics"] = {{"rf_condition", sol.diagnostics().rf_condition},
                      {"mode_condition", sol.diagnostics().mode_condition},
                      {"bc_residual", {sol.diagnostics().bc_residual[0],
                                       sol.diagnostics().bc_residual[1]}}};
  return j.dump(2);
}

std::string solution_to_json(const FsmSolution2D& sol) {
  json j;
  j["Pe"] = sol.params().Pe;
  j["Da"] = sol.params().Da;
  j["theta"] = sol.params().theta;
  j["a"] = sol.params().a;
  j["b"] = sol.params().b;
  j["particular"] = json::parse(series_to_json(sol.particular()));
  j["x1_family"] = sol.family_coeffs(Axis::x1);
  j["x2_family"] = sol.family_coeffs(Axis::x2);
  j["corner"] = sol.corner_coeff();
  j["diagnostics"] = {{"residual_norm", sol.diagnostics().residual_norm},
                      {"rhs_norm", sol.diagnostics().rhs_norm},
                      {"condition", sol.diagnostics().condition},
                      {"rank", sol.diagnostics().rank},
                      {"poorly_resolved", sol.diagnostics().poorly_resolved},
                      {"worst_quadrature", sol.diagnostics().worst_quadrature}};
  return j.dump(2);
}

void write_profile_csv(const std::string& path, const std::function<double(double, int)>& fn,
                       double lo, double hi, int samples) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "x,phi,dphi,d2phi\n";
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    out << fmt17(x) << ',' << fmt17(fn(x, 0)) << ',' << fmt17(fn(x, 1)) << ','
        << fmt17(fn(x, 2)) << '\n';
  }
}

void write_field_csv(const std::string& path,
                     const std::function<double(double, double, int, int)>& fn, double a, double b,
                     int grid) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "x1,x2,phi,dphi_dx1,dphi_dx2\n";
  for (int j = 0; j < grid; ++j) {
    const double x2 = -b + 2.0 * b * j / (grid - 1);
    for (int i = 0; i < grid; ++i) {
      const double x1 = -a + 2.0 * a * i / (grid - 1);
      out << fmt17(x1) << ',' << fmt17(x2) << ',' << fmt17(fn(x1, x2, 0, 0)) << ','
          << fmt17(fn(x1, x2, 1, 0)) << ',' << fmt17(fn(x1, x2, 0, 1)) << '\n';
    }
  }
}

}  // namespace fsm
