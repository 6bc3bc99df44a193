#pragma once

// Bi-invariant order on F2 from the truncated Magnus expansion
// f -> 1 + X, g -> 1 + Y into integer power series in two non-commuting
// variables. Distinct words first differ at a monomial of degree <= their
// combined length, and the first differing coefficient is invariant under
// multiplication on either side, which is exactly what orbit placement
// needs: sorting points by this order makes every generator act monotonely.
//
// Monomials of degree d are indexed by d-bit strings (0 = X, 1 = Y); the
// dense coefficient vector stores degrees 0..D contiguously, graded-lex.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freediff/words.hpp"

namespace freediff {

using BigInt = boost::multiprecision::cpp_int;

inline std::size_t magnus_vector_size(int max_degree) {
  return (std::size_t{1} << (max_degree + 1)) - 1;
}

inline std::size_t magnus_offset(int degree) {
  return (std::size_t{1} << degree) - 1;
}

namespace detail {

// result += a * b, truncated at max_degree. Vectors are dense graded-lex.
inline void magnus_mul(const std::vector<std::int64_t>& a,
                       const std::vector<std::int64_t>& b, int max_degree,
                       std::vector<std::int64_t>& result) {
  std::fill(result.begin(), result.end(), 0);
  for (int da = 0; da <= max_degree; ++da) {
    std::size_t oa = magnus_offset(da);
    std::size_t ca = std::size_t{1} << da;
    for (std::size_t ma = 0; ma < ca; ++ma) {
      std::int64_t av = a[oa + ma];
      if (av == 0) continue;
      for (int db = 0; da + db <= max_degree; ++db) {
        std::size_t ob = magnus_offset(db);
        std::size_t cb = std::size_t{1} << db;
        std::size_t od = magnus_offset(da + db);
        for (std::size_t mb = 0; mb < cb; ++mb) {
          std::int64_t bv = b[ob + mb];
          if (bv == 0) continue;
          std::size_t m = (ma << db) | mb;  // concatenated monomial
          result[od + m] += av * bv;
        }
      }
    }
  }
}

inline std::vector<std::int64_t> magnus_letter(Letter a, int max_degree) {
  std::vector<std::int64_t> v(magnus_vector_size(max_degree), 0);
  v[0] = 1;
  std::size_t var = static_cast<std::size_t>(generator_index(a));  // 0=X, 1=Y
  if (exponent(a) == +1) {
    v[magnus_offset(1) + var] = 1;
  } else {
    // (1 + V)^-1 = 1 - V + V^2 - ...
    std::int64_t sign = -1;
    for (int d = 1; d <= max_degree; ++d) {
      std::size_t mono = 0;
      for (int i = 0; i < d; ++i) mono = (mono << 1) | var;
      v[magnus_offset(d) + mono] = sign;
      sign = -sign;
    }
  }
  return v;
}

}  // namespace detail

/// Dense truncated Magnus coefficient vector of w (degrees 0..max_degree).
inline std::vector<std::int64_t> magnus_coeffs(const ReducedWord& w,
                                               int max_degree) {
  if (max_degree < 1 || max_degree > 20)
    throw std::invalid_argument("magnus_coeffs: degree out of range");
  std::vector<std::int64_t> acc(magnus_vector_size(max_degree), 0);
  acc[0] = 1;
  // Group element is a_r * ... * a_1; multiply series in that order.
  std::vector<std::int64_t> tmp(acc.size());
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    auto lv = detail::magnus_letter(*it, max_degree);
    detail::magnus_mul(acc, lv, max_degree, tmp);
    acc.swap(tmp);
  }
  return acc;
}

/// Graded-lex sign of w1 vs w2: -1, 0, +1. Zero only when the truncated
/// expansions agree; callers compare words to at most the given depth.
inline int magnus_compare(const ReducedWord& w1, const ReducedWord& w2,
                          int max_degree) {
  auto a = magnus_coeffs(w1, max_degree);
  auto b = magnus_coeffs(w2, max_degree);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : +1;
  }
  return 0;
}

/// True iff w1 < w2 in the Magnus order; throws if the truncation cannot
/// separate them (they must then be equal as words for valid inputs).
inline bool magnus_less(const ReducedWord& w1, const ReducedWord& w2) {
  int depth = static_cast<int>(w1.size() + w2.size());
  if (depth < 2) depth = 2;
  if (depth > 16) depth = 16;
  int c = magnus_compare(w1, w2, depth);
  if (c == 0 && !(w1 == w2))
    throw std::runtime_error("magnus_less: truncation too shallow");
  return c < 0;
}

/// Exact integer embedding of a finite word set such that every difference
/// of positions is dominated by its first nonzero coefficient level
/// (degree 1, then 2, then 3). Left-multiplying all words by a common
/// letter changes position differences only at levels above the leading
/// one, so span ratios under any generator stay within the tuned margin.
class WordEmbedding {
 public:
  /// margin_ratio m > 0: per-generator span ratios are within [1/(1+m), 1+m].
  WordEmbedding(const std::vector<ReducedWord>& words, double margin_ratio) {
    if (words.empty()) throw std::invalid_argument("WordEmbedding: empty");
    std::size_t maxlen = 0;
    for (const auto& w : words) maxlen = std::max(maxlen, w.size());
    const int D = 3;
    std::vector<std::vector<std::int64_t>> coeffs;
    coeffs.reserve(words.size());
    for (const auto& w : words) coeffs.push_back(magnus_coeffs(w, D));

    // Level functionals: P1 from degree 1, P2 from degree 2, P3 from degree 3.
    std::int64_t lambda = 4 * static_cast<std::int64_t>(maxlen) + 4;
    std::int64_t c2max = 1, c3max = 1;
    for (const auto& c : coeffs) {
      for (std::size_t i = magnus_offset(2); i < magnus_offset(3); ++i)
        c2max = std::max<std::int64_t>(c2max, std::abs(c[i]));
      for (std::size_t i = magnus_offset(3); i < c.size(); ++i)
        c3max = std::max<std::int64_t>(c3max, std::abs(c[i]));
    }
    BigInt b2 = 2 * c2max + 2, b3 = 2 * c3max + 2;

    std::vector<BigInt> p1(words.size()), p2(words.size()), p3(words.size());
    BigInt m3 = 1, m2 = 1;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const auto& c = coeffs[k];
      p1[k] = BigInt(c[magnus_offset(1) + 0]) * lambda +
              BigInt(c[magnus_offset(1) + 1]);
      BigInt q2 = 0;
      for (std::size_t i = 0; i < 4; ++i)
        q2 = q2 * b2 + BigInt(c[magnus_offset(2) + i]);
      p2[k] = q2;
      BigInt q3 = 0;
      for (std::size_t i = 0; i < 8; ++i)
        q3 = q3 * b3 + BigInt(c[magnus_offset(3) + i]);
      p3[k] = q3;
      m2 = std::max(m2, BigInt(abs(q2)));
      m3 = std::max(m3, BigInt(abs(q3)));
    }

    double m = margin_ratio;
    if (!(m > 0)) throw std::invalid_argument("WordEmbedding: margin <= 0");
    if (m > 1) m = 1;
    BigInt H = static_cast<std::int64_t>(1.0 / m) + 2;
    BigInt k2 = 8 * (m3 + 1) * H;
    BigInt mq = k2 * (m2 + 1) + m3 + 1;
    BigInt k1 = 8 * mq * H;

    positions_.resize(words.size());
    for (std::size_t k = 0; k < words.size(); ++k)
      positions_[k] = k1 * p1[k] + k2 * p2[k] + p3[k];

    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        if (positions_[i] == positions_[j] && !(words[i] == words[j]))
          throw std::runtime_error(
              "WordEmbedding: word set too deep for degree-3 embedding");
  }

  const std::vector<BigInt>& positions() const { return positions_; }

 private:
  std::vector<BigInt> positions_;
};

}  // namespace freediff
