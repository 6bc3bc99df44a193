#pragma once

// Norms measuring distance of word maps from the identity, discreteness
// certificates over both constructions, and the analytic mean-value
// obstruction report for C1 maps satisfying the chain conditions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "freediff/certificate.hpp"
#include "freediff/diffeo.hpp"
#include "freediff/interval_chain.hpp"
#include "freediff/pingpong.hpp"
#include "freediff/pl_homeo.hpp"
#include "freediff/schedule.hpp"
#include "freediff/words.hpp"

namespace freediff {

struct MapNorms {
  double displacement = 0;         // sup |W(x) - x|
  double derivative_deviation = 0;  // sup |W'(x) - 1|
};

/// Grid-based lower bounds of the sup norms of a word map (uniform grid
/// plus every interpolation knot of both generators).
inline MapNorms word_norms_c1(const ReducedWord& w, const PiecewiseC1Map& f,
                              const PiecewiseC1Map& g, int grid_size) {
  std::vector<double> xs;
  xs.reserve(grid_size + 64);
  for (int i = 0; i <= grid_size; ++i) xs.push_back(double(i) / grid_size);
  for (const PiecewiseC1Map* m : {&f, &g})
    for (const auto& iv : m->intervals())
      for (const auto& k : iv.knots) xs.push_back(k.x);
  MapNorms n;
  for (double x : xs) {
    double y = eval_word(w, f, g, x);
    double d = deriv_word(w, f, g, x);
    n.displacement = std::max(n.displacement, std::abs(y - x));
    n.derivative_deviation =
        std::max(n.derivative_deviation, std::abs(d - 1.0));
  }
  return n;
}

/// Exact sup norms of a PL map: displacement peaks at breakpoints, slope
/// deviation at segments. grid arguments do not apply on this path.
inline std::pair<Rational, Rational> word_norms_pl(const PLHomeo& map) {
  return {map.max_displacement(), map.max_slope_deviation()};
}

/// One witness t = x0^n per enumerated pair: |U'(t) - V'(t)| > C. Pairs with
/// U = V denote equal group elements and are recorded as vacuous.
inline Certificate uniform_discreteness_certificate(const BuildResult& build,
                                                    double C) {
  Certificate cert;
  cert.claim_id = "thm1.uniform_discreteness";
  cert.inputs = Json{{"pairs", build.plans.size()}, {"C", C}};
  cert.tolerances.push_back({"gap_strict", 0.0});
  bool ok = true;
  double min_gap = -1;
  std::int64_t checked = 0, skipped = 0;
  for (const auto& plan : build.plans) {
    if (plan.pair.U == plan.pair.V) {
      ++skipped;
      continue;
    }
    double t = Ladder::midpoint(plan.pair_index);
    double du = deriv_word(plan.pair.U, build.f, build.g, t);
    double dv = deriv_word(plan.pair.V, build.f, build.g, t);
    double gap = std::abs(du - dv);
    ++checked;
    if (min_gap < 0 || gap < min_gap) min_gap = gap;
    if (!(gap > C)) {
      ok = false;
      cert.witnesses.push_back({"gap violation",
                                Json{{"n", plan.pair_index},
                                     {"U", plan.pair.U.to_string()},
                                     {"V", plan.pair.V.to_string()},
                                     {"U_deriv", du},
                                     {"V_deriv", dv},
                                     {"gap", gap}}});
    }
  }
  cert.witnesses.push_back({"summary", Json{{"checked", checked},
                                            {"reflexive_skipped", skipped},
                                            {"min_gap", min_gap},
                                            {"C", C}}});
  cert.pass = ok;
  cert.stamp();
  return cert;
}

/// min over nontrivial reduced f,g-words of length <= L of |W(x0) - x0|.
inline Certificate strong_discreteness_c1(const PiecewiseC1Map& f,
                                          const PiecewiseC1Map& g, double x0,
                                          double C, int L) {
  Certificate cert;
  cert.claim_id = "thm1.strong_discreteness";
  cert.inputs = Json{{"x0", x0}, {"C", C}, {"L", L}};
  double min_disp = -1;
  std::string argmin;
  for (int l = 1; l <= L; ++l) {
    for (const auto& w : words_of_length(l)) {
      double disp = std::abs(eval_word(w, f, g, x0) - x0);
      if (min_disp < 0 || disp < min_disp) {
        min_disp = disp;
        argmin = w.to_string();
      }
    }
  }
  cert.witnesses.push_back(
      {"minimum displacement at x0",
       Json{{"min", min_disp}, {"argmin", argmin}, {"C", C}}});
  cert.pass = min_disp > C;
  cert.stamp();
  return cert;
}

/// Exact analogue over the ping-pong subgroup generators.
inline Certificate strong_discreteness_pl(const AdmissibleWordPair& pair,
                                          const PLHomeo& f, const PLHomeo& g,
                                          const IntervalChain& chain,
                                          const Rational& x0,
                                          const Rational& C, int L) {
  if (chain.window() < required_window(pair, L))
    throw std::invalid_argument("strong_discreteness_pl: window exhausted");
  Certificate cert;
  cert.claim_id = "thm2.strong_discreteness";
  cert.inputs = Json{{"x0", to_string(x0)},
                     {"C", to_string(C)},
                     {"L", L},
                     {"U", pair.U.to_string()},
                     {"V", pair.V.to_string()}};
  Rational min_disp;
  bool have = false;
  std::string argmin;
  for (const auto& w : enumerate_ping_words(L)) {
    Rational disp = abs(pl_apply_word(expand_word(w, pair), f, g, x0) - x0);
    if (!have || disp < min_disp) {
      min_disp = disp;
      argmin = ping_to_string(w);
      have = true;
    }
  }
  cert.witnesses.push_back({"minimum displacement at x0",
                            Json{{"min", to_string(min_disp)},
                                 {"min_approx", to_double(min_disp)},
                                 {"argmin", argmin},
                                 {"C", to_string(C)}}});
  cert.pass = min_disp > C;
  cert.stamp();
  return cert;
}

/// min over nontrivial f,g-words of length <= L of the grid displacement
/// norm; pass iff it exceeds C.
inline Certificate norm0_discreteness_c1(const PiecewiseC1Map& f,
                                         const PiecewiseC1Map& g, double C,
                                         int L, int grid_size) {
  Certificate cert;
  cert.claim_id = "thm1.norm0_discreteness";
  cert.inputs = Json{{"C", C}, {"L", L}, {"grid", grid_size}};
  double min_norm = -1;
  std::string argmin;
  for (int l = 1; l <= L; ++l) {
    for (const auto& w : words_of_length(l)) {
      MapNorms n = word_norms_c1(w, f, g, grid_size);
      if (min_norm < 0 || n.displacement < min_norm) {
        min_norm = n.displacement;
        argmin = w.to_string();
      }
    }
  }
  cert.witnesses.push_back(
      {"minimum displacement norm",
       Json{{"min", min_norm}, {"argmin", argmin}, {"C", C}}});
  cert.pass = min_norm > C;
  cert.stamp();
  return cert;
}

/// Exact PL analogue over the subgroup words (composite maps via a prefix
/// tree so shared subwords are composed once).
inline Certificate norm0_discreteness_pl(const AdmissibleWordPair& pair,
                                         const PLHomeo& f, const PLHomeo& g,
                                         const IntervalChain& chain,
                                         const Rational& C, int L) {
  if (chain.window() < required_window(pair, L))
    throw std::invalid_argument("norm0_discreteness_pl: window exhausted");
  Certificate cert;
  cert.claim_id = "thm2.norm0_discreteness";
  cert.inputs = Json{{"C", to_string(C)},
                     {"L", L},
                     {"U", pair.U.to_string()},
                     {"V", pair.V.to_string()}};
  PLHomeo gens[4] = {pl_word_map(pair.U, f, g),
                     pl_word_map(pair.U.inverse_word(), f, g),
                     pl_word_map(pair.V, f, g),
                     pl_word_map(pair.V.inverse_word(), f, g)};
  auto gen_of = [&](int s) -> const PLHomeo& {
    switch (s) {
      case +1: return gens[0];
      case -1: return gens[1];
      case +2: return gens[2];
      default: return s == -2 ? gens[3] : gens[0];
    }
  };
  Rational min_norm;
  bool have = false;
  std::string argmin;
  // Depth-first over the reduced-word tree, composing incrementally.
  struct Frame {
    PingWord word;
    PLHomeo map;
  };
  std::vector<Frame> stack;
  stack.push_back({{}, PLHomeo::identity()});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    if (!fr.word.empty()) {
      Rational disp = fr.map.max_displacement();
      if (!have || disp < min_norm) {
        min_norm = disp;
        argmin = ping_to_string(fr.word);
        have = true;
      }
    }
    if (static_cast<int>(fr.word.size()) == L) continue;
    for (int s : {+1, -1, +2, -2}) {
      if (!fr.word.empty() && fr.word.back() == -s) continue;
      Frame nf;
      nf.word = fr.word;
      nf.word.push_back(s);
      nf.map = gen_of(s).after(fr.map);
      stack.push_back(std::move(nf));
    }
  }
  cert.witnesses.push_back({"minimum displacement norm",
                            Json{{"min", to_string(min_norm)},
                                 {"min_approx", to_double(min_norm)},
                                 {"argmin", argmin},
                                 {"C", to_string(C)}}});
  cert.pass = min_norm > C;
  cert.stamp();
  return cert;
}

// ---------------------------------------------------------------------------
// Mean-value obstruction: no C1 pair can satisfy the chain conditions.

struct ObstructionParams {
  double p = 1.0;        // limiting derivative of f at 1-
  double p1 = 0.99;      // p1 < p, p1 > (99/100) p
  double p2 = 1.01;      // p2 > p, p2 < (101/100) p
  int power_count = 3;   // 3 for the full condition, 2 for the weak variant

  void validate() const {
    if (!(p > 0 && p1 > 0 && p2 > 0))
      throw std::invalid_argument("obstruction: parameters must be positive");
    if (!(p1 < p && p < p2))
      throw std::invalid_argument("obstruction: need p1 < p < p2");
    if (!(p1 > 0.99 * p) || !(p2 < 1.01 * p))
      throw std::invalid_argument("obstruction: p1, p2 outside the 1% band");
    if (power_count != 2 && power_count != 3)
      throw std::invalid_argument("obstruction: power_count in {2, 3}");
  }
};

/// Evaluates the mean-value-theorem contradiction: condition-forced length
/// ratios give g'(u_n) < 1/S2 and (g^-1)'(v_n) < 1/S1, while the product of
/// the limits must be 1; the bound 1/sum((p1/p2)^k) < 1 establishes the
/// obstruction (< 1/2 in the three-power case with p1/p2 >= 98/101).
inline Certificate obstruction_report(const ObstructionParams& params,
                                      const IntervalChain& chain,
                                      std::int64_t n_lo, std::int64_t n_hi) {
  params.validate();
  double s1 = 0, s2 = 0, sr = 0;
  for (int k = 1; k <= params.power_count; ++k) {
    s1 += std::pow(params.p1, k);
    s2 += std::pow(1.0 / params.p2, k);
    sr += std::pow(params.p1 / params.p2, k);
  }
  double bound = 1.0 / sr;
  bool strong_case =
      params.power_count == 3 && params.p1 / params.p2 >= 98.0 / 101.0;

  Certificate cert;
  cert.claim_id = "obstruction.mvt";
  cert.inputs = Json{{"p", params.p},
                     {"p1", params.p1},
                     {"p2", params.p2},
                     {"power_count", params.power_count},
                     {"n_range", {n_lo, n_hi}}};
  cert.tolerances.push_back({"arithmetic", 1e-12});
  cert.witnesses.push_back(
      {"sums", Json{{"S1", s1}, {"S2", s2}, {"product_bound", bound},
                    {"lt_1", bound < 1.0},
                    {"lt_half", strong_case ? Json(bound < 0.5) : Json()}}});
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    double an = to_double(chain.A(n).width());
    double bn = to_double(chain.B(n).width());
    double an1 = to_double(chain.A(n + 1).width());
    cert.witnesses.push_back(
        {"interval ratios",
         Json{{"n", n},
              {"B_over_A", bn / an},
              {"B_gt_S1_A", bn > s1 * an},
              {"B_over_Anext", bn / an1},
              {"B_gt_S2_Anext", bn > s2 * an1},
              {"g_deriv_witness_bound", an1 / bn},
              {"g_deriv_lt_inv_S2", an1 / bn < 1.0 / s2},
              {"ginv_deriv_witness_bound", an / bn},
              {"ginv_deriv_lt_inv_S1", an / bn < 1.0 / s1}}});
  }
  cert.pass = bound < 1.0 && (!strong_case || bound < 0.5);
  cert.stamp();
  return cert;
}

}  // namespace freediff
