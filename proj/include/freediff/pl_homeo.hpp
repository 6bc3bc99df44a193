#pragma once

// Exact piecewise-linear increasing homeomorphisms of [0,1] with rational
// breakpoints, closed under composition and inversion.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freediff/interval_chain.hpp"
#include "freediff/rational.hpp"

namespace freediff {

class PLHomeo {
 public:
  using Breakpoint = std::pair<Rational, Rational>;  // (x, y)

  PLHomeo() : bp_{{0, 0}, {1, 1}} {}

  static PLHomeo identity() { return PLHomeo(); }

  /// Breakpoints must be strictly increasing in both coordinates and run
  /// from (0,0) to (1,1).
  static PLHomeo from_breakpoints(std::vector<Breakpoint> bp) {
    if (bp.size() < 2) throw std::invalid_argument("PLHomeo: need >= 2 points");
    if (!(bp.front().first == 0 && bp.front().second == 0 &&
          bp.back().first == 1 && bp.back().second == 1))
      throw std::invalid_argument("PLHomeo: must fix 0 and 1");
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
      if (!(bp[i].first < bp[i + 1].first && bp[i].second < bp[i + 1].second))
        throw std::invalid_argument("PLHomeo: breakpoints not increasing");
    PLHomeo p;
    p.bp_ = std::move(bp);
    return p;
  }

  const std::vector<Breakpoint>& breakpoints() const { return bp_; }

  Rational apply(const Rational& x) const {
    if (x < 0 || x > 1) throw std::domain_error("PLHomeo: x outside [0,1]");
    auto it = std::lower_bound(
        bp_.begin(), bp_.end(), x,
        [](const Breakpoint& b, const Rational& v) { return b.first < v; });
    if (it != bp_.end() && it->first == x) return it->second;
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    return lo.second + (x - lo.first) * (hi.second - lo.second) /
                           (hi.first - lo.first);
  }

  PLHomeo inverse() const {
    std::vector<Breakpoint> bp(bp_.size());
    for (std::size_t i = 0; i < bp_.size(); ++i)
      bp[i] = {bp_[i].second, bp_[i].first};
    return from_breakpoints(std::move(bp));
  }

  /// Composition (*this after q): x -> this(q(x)).
  PLHomeo after(const PLHomeo& q) const {
    PLHomeo qinv = q.inverse();
    std::vector<Rational> xs;
    xs.reserve(bp_.size() + q.bp_.size());
    for (const auto& b : q.bp_) xs.push_back(b.first);
    for (const auto& b : bp_) xs.push_back(qinv.apply(b.first));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Breakpoint> bp;
    bp.reserve(xs.size());
    for (const auto& x : xs) bp.push_back({x, apply(q.apply(x))});
    return from_breakpoints(std::move(bp));
  }

  /// Image of an open interval.
  RatInterval image(const RatInterval& iv) const {
    return {apply(iv.lo), apply(iv.hi)};
  }

  /// Exact extreme slopes over segments meeting the (closed) region.
  std::pair<Rational, Rational> slope_range(const Rational& lo,
                                            const Rational& hi) const {
    if (!(lo < hi)) throw std::invalid_argument("slope_range: empty region");
    bool any = false;
    Rational mn = 1, mx = 1;
    for (std::size_t i = 0; i + 1 < bp_.size(); ++i) {
      if (bp_[i + 1].first <= lo || bp_[i].first >= hi) continue;
      Rational s = (bp_[i + 1].second - bp_[i].second) /
                   (bp_[i + 1].first - bp_[i].first);
      if (!any) {
        mn = mx = s;
        any = true;
      } else {
        mn = std::min(mn, s);
        mx = std::max(mx, s);
      }
    }
    if (!any) throw std::invalid_argument("slope_range: region misses map");
    return {mn, mx};
  }

  /// max(max_slope, 1/min_slope) over the region.
  Rational bilipschitz_constant(const Rational& lo, const Rational& hi) const {
    auto [mn, mx] = slope_range(lo, hi);
    Rational inv = 1 / mn;
    return std::max(mx, inv);
  }

  /// Largest |f(x) - x| over [0,1]; attained at a breakpoint.
  Rational max_displacement() const {
    Rational best = 0;
    for (const auto& b : bp_) {
      Rational d = abs(b.second - b.first);
      best = std::max(best, d);
    }
    return best;
  }

  /// Largest |slope - 1| over [0,1].
  Rational max_slope_deviation() const {
    Rational best = 0;
    for (std::size_t i = 0; i + 1 < bp_.size(); ++i) {
      Rational s = (bp_[i + 1].second - bp_[i].second) /
                   (bp_[i + 1].first - bp_[i].first);
      best = std::max(best, Rational(abs(s - 1)));
    }
    return best;
  }

 private:
  std::vector<Breakpoint> bp_;
};

inline PLHomeo compose(const PLHomeo& p, const PLHomeo& q) {
  return p.after(q);
}

inline PLHomeo invert(const PLHomeo& p) { return p.inverse(); }

inline Rational apply(const PLHomeo& p, const Rational& x) {
  return p.apply(x);
}

inline RatInterval image(const PLHomeo& p, const RatInterval& iv) {
  return p.image(iv);
}

struct LipschitzProfile {
  Rational min_slope, max_slope, constant;
};

inline LipschitzProfile lipschitz_profile(const PLHomeo& p, const Rational& lo,
                                          const Rational& hi) {
  auto [mn, mx] = p.slope_range(lo, hi);
  return {mn, mx, std::max(mx, Rational(1 / mn))};
}

}  // namespace freediff
