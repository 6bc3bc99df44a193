#pragma once

// Global C1 self-maps of [0,1] that realize prescribed orbit data on the
// interval ladder I_n = (1/(2n+1), 1/(2n)) and are the identity elsewhere.
//
// Per ladder interval the construction places one orbit node per word stage,
// ordered by the bi-invariant word order (word_order.hpp), which makes each
// generator's induced partial map monotone with span ratios near 1. Every
// node becomes an exact affine window of the matching generator (value and
// derivative hit exactly); windows are joined by monotone cubic Hermite
// pieces, subdivided with a plateau knot pair whenever a single piece would
// leave the derivative band.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "freediff/schedule.hpp"
#include "freediff/word_order.hpp"
#include "freediff/words.hpp"

namespace freediff {

struct plan_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ladder {
  std::int64_t max_index = 0;

  static double lo(std::int64_t n) { return 1.0 / (2.0 * double(n) + 1.0); }
  static double hi(std::int64_t n) { return 1.0 / (2.0 * double(n)); }
  static double midpoint(std::int64_t n) { return 0.5 * (lo(n) + hi(n)); }
  static double width(std::int64_t n) { return hi(n) - lo(n); }
};

struct DerivativeBand {
  double min = 1.0;
  double max = 1.0;

  static DerivativeBand for_interval(double beta, std::int64_t n) {
    DerivativeBand b;
    b.max = 1.0 + beta + 1.0 / double(n);
    b.min = 1.0 / b.max;
    return b;
  }
  bool contains_strict(double lo_v, double hi_v) const {
    return lo_v > min * (1.0 + 1e-12) && hi_v < max * (1.0 - 1e-12);
  }
};

struct ConstraintTriple {
  double x = 0, y = 0, d = 1;  // h(x) = y with h'(x) = d
};

struct OrbitNode {
  ReducedWord word;
  std::string label;  // "U0".."Ur" for shared/U stages, "Vk" for branch
  double location = 0;
};

struct OrbitPlan {
  std::int64_t pair_index = 0;
  WordPair pair;
  double beta = 0;
  double span = 0;  // half-width of the node region around the midpoint
  std::vector<OrbitNode> nodes;  // sorted by location
  std::array<std::vector<ConstraintTriple>, 2> constraints;  // [f, g], by x
};

struct MapKnot {
  double x = 0, y = 0, d = 1;
};

struct IntervalInterpolant {
  std::int64_t ladder_index = 0;
  double lo = 0, hi = 1;
  std::vector<MapKnot> knots;  // strictly increasing x and y; ends identity
};

namespace detail {

inline double hermite_value(const MapKnot& k0, const MapKnot& k1, double x) {
  double h = k1.x - k0.x;
  double u = (x - k0.x) / h;
  double um = 1.0 - u;
  double h00 = (1.0 + 2.0 * u) * um * um;
  double h10 = u * um * um;
  double h01 = u * u * (3.0 - 2.0 * u);
  double h11 = u * u * (u - 1.0);
  return h00 * k0.y + h10 * h * k0.d + h01 * k1.y + h11 * h * k1.d;
}

inline double hermite_deriv(const MapKnot& k0, const MapKnot& k1, double x) {
  double h = k1.x - k0.x;
  double u = (x - k0.x) / h;
  double dh00 = 6.0 * u * u - 6.0 * u;
  double dh10 = 3.0 * u * u - 4.0 * u + 1.0;
  double dh01 = 6.0 * u - 6.0 * u * u;
  double dh11 = 3.0 * u * u - 2.0 * u;
  return (dh00 * k0.y + dh01 * k1.y) / h + dh10 * k0.d + dh11 * k1.d;
}

/// Exact range of the Hermite piece derivative over the gap.
inline std::pair<double, double> hermite_deriv_range(const MapKnot& k0,
                                                     const MapKnot& k1) {
  double h = k1.x - k0.x;
  double delta = (k1.y - k0.y) / h;
  // P'(u) = a u^2 + b u + c on [0,1].
  double a = 3.0 * k0.d + 3.0 * k1.d - 6.0 * delta;
  double b = -4.0 * k0.d - 2.0 * k1.d + 6.0 * delta;
  double c = k0.d;
  double lo_v = std::min(k0.d, k1.d);
  double hi_v = std::max(k0.d, k1.d);
  if (a != 0.0) {
    double u = -b / (2.0 * a);
    if (u > 0.0 && u < 1.0) {
      double v = (a * u + b) * u + c;
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
  }
  return {lo_v, hi_v};
}

}  // namespace detail

class PiecewiseC1Map {
 public:
  PiecewiseC1Map() = default;
  explicit PiecewiseC1Map(std::vector<IntervalInterpolant> ivals)
      : ivals_(std::move(ivals)) {
    std::sort(ivals_.begin(), ivals_.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
  }

  const std::vector<IntervalInterpolant>& intervals() const { return ivals_; }

  double eval(double x) const {
    check_domain(x);
    const IntervalInterpolant* iv = find_interval(x);
    if (!iv) return x;
    auto [k0, k1] = locate_knots(*iv, x);
    if (x == k0->x) return k0->y;
    if (x == k1->x) return k1->y;
    return detail::hermite_value(*k0, *k1, x);
  }

  double deriv(double x) const {
    check_domain(x);
    const IntervalInterpolant* iv = find_interval(x);
    if (!iv) return 1.0;
    auto [k0, k1] = locate_knots(*iv, x);
    if (x == k0->x) return k0->d;
    if (x == k1->x) return k1->d;
    return detail::hermite_deriv(*k0, *k1, x);
  }

  /// Monotone bisection of the forward map (absolute tolerance 1e-14).
  /// Exact when y is a knot value.
  double inverse(double y) const {
    check_domain(y);
    const IntervalInterpolant* iv = find_interval(y);
    if (!iv) return y;
    // Knot values are the orbit data; return their sources exactly.
    auto it = std::lower_bound(
        iv->knots.begin(), iv->knots.end(), y,
        [](const MapKnot& k, double v) { return k.y < v; });
    if (it != iv->knots.end() && it->y == y) return it->x;
    const MapKnot* k1 = &*it;        // first knot with y-value above
    const MapKnot* k0 = &*(it - 1);  // knots bracket y since ends are fixed
    double lo = k0->x, hi = k1->x;
    for (int i = 0; i < 100 && hi - lo > 1e-14; ++i) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (detail::hermite_value(*k0, *k1, mid) < y)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  bool is_identity() const { return ivals_.empty(); }

 private:
  static void check_domain(double x) {
    if (!(x >= 0.0 && x <= 1.0))
      throw std::domain_error("PiecewiseC1Map: point outside [0,1]");
  }

  const IntervalInterpolant* find_interval(double x) const {
    auto it = std::upper_bound(
        ivals_.begin(), ivals_.end(), x,
        [](double v, const IntervalInterpolant& iv) { return v < iv.lo; });
    if (it == ivals_.begin()) return nullptr;
    --it;
    if (x >= it->lo && x <= it->hi) return &*it;
    return nullptr;
  }

  static std::pair<const MapKnot*, const MapKnot*> locate_knots(
      const IntervalInterpolant& iv, double x) {
    auto it = std::upper_bound(
        iv.knots.begin(), iv.knots.end(), x,
        [](double v, const MapKnot& k) { return v < k.x; });
    if (it == iv.knots.begin()) return {&iv.knots.front(), &iv.knots.front()};
    if (it == iv.knots.end()) return {&*(it - 2), &*(it - 1)};
    return {&*(it - 1), &*it};
  }

  std::vector<IntervalInterpolant> ivals_;
};

inline double eval_word(const ReducedWord& w, const PiecewiseC1Map& f,
                        const PiecewiseC1Map& g, double x) {
  double t = x;
  for (Letter a : w.letters()) {
    const PiecewiseC1Map& m = generator_index(a) == 0 ? f : g;
    t = exponent(a) == +1 ? m.eval(t) : m.inverse(t);
  }
  return t;
}

/// Chain-rule derivative of the word map at x; inverse letters use the
/// reciprocal of the forward derivative at the preimage.
inline double deriv_word(const ReducedWord& w, const PiecewiseC1Map& f,
                         const PiecewiseC1Map& g, double x) {
  double t = x;
  double prod = 1.0;
  for (Letter a : w.letters()) {
    const PiecewiseC1Map& m = generator_index(a) == 0 ? f : g;
    if (exponent(a) == +1) {
      prod *= m.deriv(t);
      t = m.eval(t);
    } else {
      double pre = m.inverse(t);
      prod /= m.deriv(pre);
      t = pre;
    }
  }
  return prod;
}

namespace detail {

struct Edge {
  ReducedWord from, to;
  Letter letter;
  double deriv;  // prescribed derivative of `letter` at `from`
};

/// Node words and labels for a pair: U stages plus the V branch after the
/// common suffix.
inline void collect_nodes(const WordPair& p, std::vector<ReducedWord>& words,
                          std::vector<std::string>& labels,
                          std::vector<Edge>& edges, double beta) {
  auto ustages = p.U.stage_words();
  auto vstages = p.V.stage_words();
  std::size_t s = p.common_suffix_length;
  words.clear();
  labels.clear();
  for (std::size_t k = 0; k < ustages.size(); ++k) {
    words.push_back(ustages[k]);
    labels.push_back("U" + std::to_string(k));
  }
  for (std::size_t k = s + 1; k < vstages.size(); ++k) {
    words.push_back(vstages[k]);
    labels.push_back("V" + std::to_string(k));
  }
  edges.clear();
  for (std::size_t k = 0; k + 1 < ustages.size(); ++k)
    edges.push_back({ustages[k], ustages[k + 1], p.U[k], 1.0 + beta});
  for (std::size_t k = s; k + 1 < vstages.size(); ++k)
    edges.push_back({vstages[k], vstages[k + 1], p.V[k], 1.0});
}

struct RawConstraint {
  std::size_t src_node = 0, dst_node = 0;  // indices into the node list
  double d = 1.0;
};

inline OrbitPlan make_plan(const WordPair& p, double beta, std::int64_t n,
                           double span) {
  std::vector<ReducedWord> words;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  collect_nodes(p, words, labels, edges, beta);

  double margin = std::min(beta, 1.0) / 2.0;
  WordEmbedding emb(words, margin);
  const auto& pos = emb.positions();

  // Scale integer positions into [mid - span, mid + span], identity at mid.
  std::size_t id_node = 0;  // U0 is the empty word
  BigInt maxabs = 1;
  for (const auto& q : pos) {
    BigInt d = abs(q - pos[id_node]);
    maxabs = std::max(maxabs, d);
  }
  double mid = Ladder::midpoint(n);
  std::vector<double> loc(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    boost::multiprecision::cpp_rational ratio(pos[i] - pos[id_node], maxabs);
    loc[i] = mid + ratio.convert_to<double>() * span;
  }

  // The double image must stay injective and ordered like the embedding.
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (!(loc[order[i]] < loc[order[i + 1]]))
      throw plan_error("orbit nodes collapse in double precision");

  OrbitPlan plan;
  plan.pair_index = n;
  plan.pair = p;
  plan.beta = beta;
  plan.span = span;
  for (std::size_t i : order)
    plan.nodes.push_back({words[i], labels[i], loc[i]});

  // Generator constraints from edges; inverse letters constrain the forward
  // generator at the image point with reciprocal derivative.
  std::array<std::map<std::size_t, RawConstraint>, 2> by_src;
  auto node_of = [&](const ReducedWord& w) {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] == w) return i;
    throw plan_error("edge endpoint is not a node");
  };
  for (const auto& e : edges) {
    int gen = generator_index(e.letter);
    RawConstraint c;
    if (exponent(e.letter) == +1) {
      c.src_node = node_of(e.from);
      c.dst_node = node_of(e.to);
      c.d = e.deriv;
    } else {
      c.src_node = node_of(e.to);
      c.dst_node = node_of(e.from);
      c.d = 1.0 / e.deriv;
    }
    auto [it, inserted] = by_src[gen].emplace(c.src_node, c);
    if (!inserted &&
        (it->second.dst_node != c.dst_node || it->second.d != c.d))
      throw plan_error("conflicting constraints at a shared node");
  }

  for (int gen = 0; gen < 2; ++gen) {
    std::vector<RawConstraint> cs;
    for (auto& [src, c] : by_src[gen]) cs.push_back(c);
    std::sort(cs.begin(), cs.end(), [&](const auto& a, const auto& b) {
      return loc[a.src_node] < loc[b.src_node];
    });
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      if (!(loc[cs[i].dst_node] < loc[cs[i + 1].dst_node]))
        throw plan_error("generator constraint map is not monotone");
      double num = loc[cs[i + 1].dst_node] - loc[cs[i].dst_node];
      double den = loc[cs[i + 1].src_node] - loc[cs[i].src_node];
      double ratio = num / den;
      if (!(ratio > 1.0 / (1.0 + beta) && ratio < 1.0 + beta))
        throw plan_error("constraint secant outside the derivative core");
    }
    for (const auto& c : cs)
      plan.constraints[gen].push_back({loc[c.src_node], loc[c.dst_node], c.d});
  }
  return plan;
}

/// Knot sequence for one generator on one ladder interval. Throws
/// plan_error when the band cannot be met at this node spacing.
inline std::vector<MapKnot> assemble_knots(
    const std::vector<ConstraintTriple>& cs, std::int64_t n,
    const DerivativeBand& band, double beta) {
  double lo = Ladder::lo(n), hi = Ladder::hi(n);
  double S = (hi - lo) / 8.0;  // identity slabs at both ends
  std::vector<MapKnot> knots;
  knots.push_back({lo, lo, 1.0});
  knots.push_back({lo + S, lo + S, 1.0});

  if (!cs.empty()) {
    double min_gap = hi - lo;
    std::vector<double> points;
    for (const auto& c : cs) {
      points.push_back(c.x);
      points.push_back(c.y);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      min_gap = std::min(min_gap, points[i + 1] - points[i]);
    double w = min_gap / (8.0 * (1.0 + std::max(beta, 1.0)));
    for (const auto& c : cs) {
      knots.push_back({c.x - w, c.y - c.d * w, c.d});
      knots.push_back({c.x, c.y, c.d});
      knots.push_back({c.x + w, c.y + c.d * w, c.d});
    }
  }

  knots.push_back({hi - S, hi - S, 1.0});
  knots.push_back({hi, hi, 1.0});
  std::sort(knots.begin(), knots.end(),
            [](const MapKnot& a, const MapKnot& b) { return a.x < b.x; });
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i].x < knots[i + 1].x && knots[i].y < knots[i + 1].y))
      throw plan_error("knot sequence not strictly monotone");

  // Bridge every gap; insert a constant-slope plateau when a single
  // Hermite piece would leave the band.
  std::vector<MapKnot> out;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const MapKnot a = knots[i];
    const MapKnot b = knots[i + 1];
    out.push_back(a);
    auto range = hermite_deriv_range(a, b);
    if (band.contains_strict(range.first, range.second)) continue;
    double gap = b.x - a.x;
    double delta = (b.y - a.y) / gap;
    double q = gap / 4.0;
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      double mu = ((b.y - a.y) - q * (a.d + b.d) / 2.0) / (gap - q);
      if (band.contains_strict(std::min({a.d, b.d, mu}),
                               std::max({a.d, b.d, mu})) &&
          mu > 0.0) {
        MapKnot p1{a.x + q, a.y + q * (a.d + mu) / 2.0, mu};
        MapKnot p2{b.x - q, b.y - q * (mu + b.d) / 2.0, mu};
        if (p1.x < p2.x && a.y < p1.y && p1.y < p2.y && p2.y < b.y) {
          out.push_back(p1);
          out.push_back(p2);
          ok = true;
          break;
        }
      }
      q *= 0.5;
      if (!(a.x + q < b.x - q)) break;
      (void)delta;
    }
    if (!ok) throw plan_error("bridge cannot stay inside the band");
  }
  out.push_back(knots.back());

  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    auto range = hermite_deriv_range(out[i], out[i + 1]);
    if (!(range.first > 0.0) ||
        !band.contains_strict(range.first, range.second))
      throw plan_error("piece derivative escapes the band");
  }
  return out;
}

}  // namespace detail

/// Node locations and constraint triples for one pair, with the spacing
/// halved (up to 40 times) until the induced interpolation is feasible.
inline OrbitPlan plan_orbit(const WordPair& pair, double beta,
                            std::int64_t ladder_index) {
  DerivativeBand band = DerivativeBand::for_interval(beta, ladder_index);
  double span0 = Ladder::width(ladder_index) / 8.0;
  std::string last;
  for (int k = 0; k <= 40; ++k) {
    try {
      OrbitPlan plan = detail::make_plan(pair, beta, ladder_index,
                                         span0 / double(1ll << k));
      for (int gen = 0; gen < 2; ++gen)
        detail::assemble_knots(plan.constraints[gen], ladder_index, band,
                               beta);
      return plan;
    } catch (const plan_error& e) {
      last = e.what();
    }
  }
  throw plan_error("plan_orbit: infeasible after 40 halvings: " + last);
}

struct BuildResult {
  PiecewiseC1Map f, g;
  std::vector<OrbitPlan> plans;
};

/// Builds the generators realizing the first `pairs.size()` word pairs on
/// ladder intervals 1..N; identity off the ladder.
inline BuildResult build_generators(const std::vector<WordPair>& pairs,
                                    const BetaSchedule& schedule) {
  BuildResult r;
  std::vector<IntervalInterpolant> fiv, giv;
  for (const auto& p : pairs) {
    std::int64_t n = p.index;
    double beta = schedule.beta_for(p);
    DerivativeBand band = DerivativeBand::for_interval(beta, n);
    OrbitPlan plan = plan_orbit(p, beta, n);
    IntervalInterpolant fi{n, Ladder::lo(n), Ladder::hi(n),
                           detail::assemble_knots(plan.constraints[0], n,
                                                  band, beta)};
    IntervalInterpolant gi{n, Ladder::lo(n), Ladder::hi(n),
                           detail::assemble_knots(plan.constraints[1], n,
                                                  band, beta)};
    fiv.push_back(std::move(fi));
    giv.push_back(std::move(gi));
    r.plans.push_back(std::move(plan));
  }
  r.f = PiecewiseC1Map(std::move(fiv));
  r.g = PiecewiseC1Map(std::move(giv));
  return r;
}

}  // namespace freediff
