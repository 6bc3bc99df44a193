#pragma once

// Derivative-growth schedules. alpha(r) is the unique positive root of
// a*(1+a)^(r-1) = C*(1+margin), which is the minimal value making
// (1+a)^s * ((1+a)^(r-s) - 1) > C for every s in {0,...,r-1}: the left side
// equals (1+a)^r - (1+a)^s, decreasing in s, so the binding case is s = r-1.

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "freediff/words.hpp"

namespace freediff {

/// Root of a*(1+a)^(r-1) = C*(1+margin) by bisection (relative 1e-12).
inline double alpha_value(int r, double C, double margin) {
  if (r < 1) throw std::invalid_argument("alpha_value: r >= 1");
  if (!(C > 0)) throw std::invalid_argument("alpha_value: C > 0");
  if (!(margin > 0 && margin <= 1))
    throw std::invalid_argument("alpha_value: margin in (0, 1]");
  const double target = C * (1.0 + margin);
  auto eval = [&](double a) { return a * std::pow(1.0 + a, r - 1) - target; };
  double lo = 0.0;
  double hi = target + 1.0;  // eval(target+1) >= (target+1) - target > 0
  if (eval(hi) <= 0) throw std::runtime_error("alpha_value: bad bracket");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (eval(mid) > 0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-12 * hi) return hi;
  }
  throw std::runtime_error("alpha_value: bisection did not converge");
}

/// Exhaustive check of the derivative-gap inequality for all s < r.
inline bool check_b2(int r, double alpha, double C) {
  if (r < 1) throw std::invalid_argument("check_b2: r >= 1");
  for (int s = 0; s < r; ++s) {
    double v = std::pow(1.0 + alpha, s) * (std::pow(1.0 + alpha, r - s) - 1.0);
    if (!(v > C)) return false;
  }
  return true;
}

class AlphaSchedule {
 public:
  explicit AlphaSchedule(double C = 1.5, double margin = 0.01)
      : C_(C), margin_(margin) {
    if (!(C > 0)) throw std::invalid_argument("AlphaSchedule: C > 0");
    if (!(margin > 0 && margin <= 1))
      throw std::invalid_argument("AlphaSchedule: margin in (0, 1]");
  }

  double C() const { return C_; }
  double margin() const { return margin_; }

  double alpha(int r) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(r);
      if (it != memo_.end()) return it->second;
    }
    double v = alpha_value(r, C_, margin_);
    if (!check_b2(r, v, C_))
      throw std::runtime_error("AlphaSchedule: computed alpha fails the gap");
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(r, v);  // idempotent on races
    return v;
  }

 private:
  double C_;
  double margin_;
  mutable std::mutex mu_;
  mutable std::map<int, double> memo_;
};

/// beta_n = alpha_{|U_n|} under the canonical pair enumeration.
class BetaSchedule {
 public:
  explicit BetaSchedule(AlphaSchedule alpha) : alpha_(std::move(alpha)) {}

  double beta(std::int64_t n) const { return alpha_.alpha(pair_u_length(n)); }
  double beta_for(const WordPair& p) const {
    return alpha_.alpha(static_cast<int>(p.U.size()));
  }
  const AlphaSchedule& alpha_schedule() const { return alpha_; }

 private:
  AlphaSchedule alpha_;
};

}  // namespace freediff
