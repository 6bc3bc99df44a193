#pragma once

// Bi-infinite chain of open rational intervals ... < A_{-1} < B_{-1} < A_0 <
// B_0 < A_1 < ... materialized on a finite window. Tail blocks follow the
// closed-form index maps; the four middle blocks are fixed constants chosen
// for reproducibility. squeezed(eps) pushes the whole chain through the
// affine map of [0,1] onto (1/2 - eps/2, 1/2 + eps/2).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freediff/rational.hpp"

namespace freediff {

struct RatInterval {
  Rational lo, hi;  // open interval (lo, hi)

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool valid() const { return lo < hi; }
  /// Open-interval containment: (c,d) subset of (a,b) iff a <= c and d <= b.
  bool contains(const RatInterval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  bool contains_point(const Rational& x) const { return lo < x && x < hi; }
  friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

class IntervalChain {
 public:
  enum class Kind { Default, Squeezed, Custom };

  /// window: conditions are checked for |n| <= window; block formulas are
  /// evaluated up to |n| <= window + 2 for the map constructions.
  static IntervalChain make_default(std::int64_t window) {
    if (window < 2) throw std::invalid_argument("chain window must be >= 2");
    IntervalChain c;
    c.kind_ = Kind::Default;
    c.window_ = window;
    c.scale_ = 1;
    c.offset_ = 0;
    c.verify_order();
    return c;
  }

  static IntervalChain squeezed(const Rational& eps, std::int64_t window) {
    if (!(eps > 0)) throw std::invalid_argument("squeeze: eps must be > 0");
    IntervalChain c;
    c.kind_ = Kind::Squeezed;
    c.window_ = window;
    c.scale_ = eps;
    c.offset_ = Rational(1, 2) - eps / 2;
    c.verify_order();
    return c;
  }

  /// blocks[k] = (A_n, B_n) for n = -window-2 .. window+2 in order.
  static IntervalChain custom(std::vector<std::pair<RatInterval, RatInterval>>
                                  blocks,
                              std::int64_t window) {
    IntervalChain c;
    c.kind_ = Kind::Custom;
    c.window_ = window;
    c.scale_ = 1;
    c.offset_ = 0;
    std::int64_t need = 2 * (window + 2) + 1;
    if (static_cast<std::int64_t>(blocks.size()) != need)
      throw std::invalid_argument("custom chain: wrong block count");
    c.custom_ = std::move(blocks);
    c.verify_order();
    return c;
  }

  Kind kind() const { return kind_; }
  std::int64_t window() const { return window_; }
  Rational squeeze_scale() const { return scale_; }

  RatInterval A(std::int64_t n) const {
    check_range(n);
    if (kind_ == Kind::Custom)
      return custom_[static_cast<std::size_t>(n + window_ + 2)].first;
    return transform(default_A(n));
  }

  RatInterval B(std::int64_t n) const {
    check_range(n);
    if (kind_ == Kind::Custom)
      return custom_[static_cast<std::size_t>(n + window_ + 2)].second;
    return transform(default_B(n));
  }

  /// Smallest point of the materialized chain region (used for identity
  /// margins of the maps built over it).
  Rational region_lo() const { return A(-window_ - 2).lo; }
  Rational region_hi() const { return B(window_ + 2).hi; }

 private:
  static RatInterval default_A(std::int64_t n) {
    if (n <= -2) {
      std::int64_t m = -n;
      return {Rational(1, 5 * (m + 1)), Rational(1, 5 * m + 4)};
    }
    if (n == -1) return {Rational(3, 20), Rational(1, 4)};
    if (n == 0) return {Rational(9, 20), Rational(11, 20)};
    return {1 - Rational(1, 5 * n), 1 - Rational(1, 5 * n + 1)};
  }

  static RatInterval default_B(std::int64_t n) {
    if (n <= -2) {
      std::int64_t m = -n;
      return {Rational(1, 5 * m + 4), Rational(1, 5 * m)};
    }
    if (n == -1) return {Rational(3, 10), Rational(2, 5)};
    if (n == 0) return {Rational(3, 5), Rational(7, 10)};
    return {1 - Rational(1, 5 * n + 1), 1 - Rational(1, 5 * (n + 1))};
  }

  RatInterval transform(RatInterval iv) const {
    iv.lo = offset_ + scale_ * iv.lo;
    iv.hi = offset_ + scale_ * iv.hi;
    return iv;
  }

  void check_range(std::int64_t n) const {
    if (n < -window_ - 2 || n > window_ + 2)
      throw std::out_of_range("chain index outside materialized range");
  }

  void verify_order() const {
    for (std::int64_t n = -window_ - 2; n <= window_ + 2; ++n) {
      RatInterval a = A(n), b = B(n);
      if (!a.valid() || !b.valid())
        throw std::invalid_argument("chain: degenerate interval");
      if (!(a.hi <= b.lo)) throw std::invalid_argument("chain: A_n !< B_n");
      if (n < window_ + 2 && !(b.hi <= A(n + 1).lo))
        throw std::invalid_argument("chain: B_n !< A_{n+1}");
    }
  }

  Kind kind_ = Kind::Default;
  std::int64_t window_ = 2;
  Rational scale_ = 1, offset_ = 0;
  std::vector<std::pair<RatInterval, RatInterval>> custom_;
};

}  // namespace freediff
