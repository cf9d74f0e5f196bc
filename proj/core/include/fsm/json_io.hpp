#pragma once

#include <functional>
#include <string>

#include "fsm/cdr1d.hpp"
#include "fsm/cdr2d.hpp"

namespace fsm {

// Series serialization: fields a (and b, M, N in 2D) plus flat coefficient
// arrays in (m, then n, then parity cc,cs,sc,ss) order; doubles round-trip
// exactly.
std::string series_to_json(const TrigSeries1D& s);
TrigSeries1D series_1d_from_json(const std::string& text);
std::string series_to_json(const TrigSeries2D& s);
TrigSeries2D series_2d_from_json(const std::string& text);

/// 1D problem document: {interval, Pe, Da, bc, source, M, N1s, method}.
/// The interval [lo, hi] is translated to the centered frame internally;
/// source positions are given in interval coordinates, polynomial source
/// coefficients in the centered (x/a) frame.
struct Problem1D {
  CdrParams1D params;
  SourceModel source = PolynomialSource{};
  BcPair1D bc;
  int modes = 40;
  int supplementary_order = 0;
  ParticularMethod method = ParticularMethod::fccm;
  double interval_lo = -1.0, interval_hi = 1.0;
};

Problem1D parse_problem_1d(const std::string& text);

/// 2D problem document: {a, b, Pe, Da, theta, bc: {left,right,bottom,top},
/// M, N, source?}. Edge data variants: constant, polynomial (in the
/// normalized edge coordinate), reference_trace (traces of the built-in
/// reference field, Neumann edges receiving its outward normal derivative).
struct Problem2D {
  CdrParams2D params;
  EdgeBcSpec bc;
  SourceModel2D source = ZeroSource2D{};
  int m_modes = 40;
  int n_modes = 40;
};

Problem2D parse_problem_2d(const std::string& text);

std::string solution_to_json(const FsmSolution1D& sol);
std::string solution_to_json(const FsmSolution2D& sol);

/// 17-significant-digit float formatting used by every CSV/JSON emitter.
std::string fmt17(double v);

/// Sampled profile, columns x,phi,dphi,d2phi.
void write_profile_csv(const std::string& path, const std::function<double(double, int)>& fn,
                       double lo, double hi, int samples);

/// Field grid, columns x1,x2,phi,dphi_dx1,dphi_dx2.
void write_field_csv(const std::string& path,
                     const std::function<double(double, double, int, int)>& fn, double a, double b,
                     int grid);

}  // namespace fsm
