#pragma once

// Free group F2 word algebra: reduced words over {f, g, f^-1, g^-1},
// suffix machinery, and the canonical enumeration of word pairs.
//
// Convention: a word W = a_r ... a_1 acts on a point with a_1 applied first.
// Letters are stored in application order (index 0 = a_1). The compact text
// form ("fFgG", empty word "1") reads in display order, i.e. reversed
// storage, so to_string(concat(u, v)) == display(u) + display(v) after
// reduction.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace freediff {

enum class Letter : std::uint8_t { f = 0, F = 1, g = 2, G = 3 };

inline constexpr Letter kLetters[4] = {Letter::f, Letter::F, Letter::g,
                                       Letter::G};

inline constexpr Letter inverse(Letter a) {
  return Letter(static_cast<std::uint8_t>(a) ^ 1u);
}

/// 0 for f-letters, 1 for g-letters.
inline constexpr int generator_index(Letter a) {
  return static_cast<std::uint8_t>(a) >> 1;
}

inline constexpr int exponent(Letter a) {
  return (static_cast<std::uint8_t>(a) & 1u) ? -1 : +1;
}

inline constexpr char letter_char(Letter a) {
  constexpr char tab[4] = {'f', 'F', 'g', 'G'};
  return tab[static_cast<std::uint8_t>(a)];
}

inline Letter letter_from_char(char c) {
  switch (c) {
    case 'f': return Letter::f;
    case 'F': return Letter::F;
    case 'g': return Letter::g;
    case 'G': return Letter::G;
    default: throw std::invalid_argument(std::string("bad letter: ") + c);
  }
}

class ReducedWord {
 public:
  ReducedWord() = default;

  /// Free reduction of an arbitrary letter sequence (application order).
  static ReducedWord reduce(std::span<const Letter> letters) {
    ReducedWord w;
    for (Letter a : letters) w.push_reduce(a);
    return w;
  }

  static ReducedWord reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }

  /// Parses display-order text ("ffgFG"); "1" or "" is the empty word.
  /// Throws if the text is not freely reduced.
  static ReducedWord from_string(const std::string& s) {
    ReducedWord w;
    if (s == "1" || s.empty()) return w;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      w.letters_.push_back(letter_from_char(*it));
    for (std::size_t i = 0; i + 1 < w.letters_.size(); ++i)
      if (w.letters_[i + 1] == inverse(w.letters_[i]))
        throw std::invalid_argument("word is not reduced: " + s);
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Letters in application order; operator[](0) acts first.
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    s.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      s.push_back(letter_char(*it));
    return s;
  }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

  /// Group product *this . other (other acts first). Result is reduced.
  ReducedWord concat(const ReducedWord& other) const {
    ReducedWord w = other;
    for (Letter a : letters_) w.push_reduce(a);
    return w;
  }

  ReducedWord inverse_word() const {
    ReducedWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(inverse(*it));
    return w;
  }

  /// True iff u is a suffix in the applied-first sense: W = U1 . u with
  /// |W| = |U1| + |u|. In storage terms u is a prefix of *this.
  bool has_suffix(const ReducedWord& u) const {
    if (u.size() > size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (letters_[i] != u.letters_[i]) return false;
    return true;
  }

  /// Partial products W(0)=1, W(1)=a_1, ..., W(r)=W (applied-first stages).
  std::vector<ReducedWord> stage_words() const {
    std::vector<ReducedWord> out;
    out.reserve(size() + 1);
    ReducedWord w;
    out.push_back(w);
    for (Letter a : letters_) {
      w.letters_.push_back(a);
      out.push_back(w);
    }
    return out;
  }

  /// Display-order lexicographic comparison with letter order f<F<g<G.
  /// Words of different length compare by length first.
  static bool display_less(const ReducedWord& a, const ReducedWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a.letters_[i] != b.letters_[i]) return a.letters_[i] < b.letters_[i];
    }
    return false;
  }

 private:
  void push_reduce(Letter a) {
    if (!letters_.empty() && letters_.back() == inverse(a))
      letters_.pop_back();
    else
      letters_.push_back(a);
  }

  std::vector<Letter> letters_;  // application order
};

inline ReducedWord concat(const ReducedWord& a, const ReducedWord& b) {
  return a.concat(b);
}

inline ReducedWord inverse(const ReducedWord& w) { return w.inverse_word(); }

inline bool is_suffix(const ReducedWord& u, const ReducedWord& w) {
  return w.has_suffix(u);
}

struct CommonSuffix {
  ReducedWord word;
  std::size_t length = 0;
};

inline CommonSuffix longest_common_suffix(const ReducedWord& u,
                                          const ReducedWord& v) {
  std::vector<Letter> shared;
  std::size_t m = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < m && u[i] == v[i]; ++i) shared.push_back(u[i]);
  CommonSuffix out;
  out.word = ReducedWord::reduce(shared);
  out.length = shared.size();
  return out;
}

/// Number of reduced words of length n, i.e. 4 * 3^(n-1).
inline std::int64_t word_count(int n) {
  if (n < 1) throw std::invalid_argument("word_count: n must be >= 1");
  std::int64_t c = 4;
  for (int i = 1; i < n; ++i) {
    if (c > (std::int64_t{1} << 62) / 3)
      throw std::overflow_error("word_count overflow");
    c *= 3;
  }
  return c;
}

/// All reduced words of length n in display-lex order (f < F < g < G).
inline std::vector<ReducedWord> words_of_length(int n) {
  if (n < 1) throw std::invalid_argument("words_of_length: n must be >= 1");
  if (n > 20) throw std::overflow_error("words_of_length: list too large");
  // Build display-order letter vectors left to right.
  std::vector<std::vector<Letter>> acc = {{}};
  for (int pos = 0; pos < n; ++pos) {
    std::vector<std::vector<Letter>> next;
    next.reserve(acc.size() * 3 + 4);
    for (const auto& pre : acc) {
      for (Letter a : kLetters) {
        // Display-adjacent inverse pairs are the same reduction condition.
        if (!pre.empty() && a == inverse(pre.back())) continue;
        auto v = pre;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    acc = std::move(next);
  }
  std::vector<ReducedWord> out;
  out.reserve(acc.size());
  for (auto& disp : acc) {
    std::string s;
    for (Letter a : disp) s.push_back(letter_char(a));
    out.push_back(ReducedWord::from_string(s));
  }
  return out;
}

struct WordPair {
  ReducedWord U;
  ReducedWord V;
  std::int64_t index = 0;             // 1-based enumeration index n
  std::size_t common_suffix_length = 0;  // s_n
};

/// Pairs with |U| = j in the enumeration: 4*3^(j-1) * (1 + sum_{k<=j} 4*3^(k-1)).
inline std::int64_t pair_block_size(int j) {
  std::int64_t vchoices = 1;  // the empty word
  for (int k = 1; k <= j; ++k) vchoices += word_count(k);
  return word_count(j) * vchoices;
}

inline std::int64_t pair_blocks_cumulative(int j) {
  std::int64_t t = 0;
  for (int k = 1; k <= j; ++k) t += pair_block_size(k);
  return t;
}

/// |U_n| for the 1-based enumeration index n (block lookup).
inline int pair_u_length(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("pair_u_length: n must be >= 1");
  int j = 1;
  while (pair_blocks_cumulative(j) < n) ++j;
  return j;
}

/// First `count` pairs of the fixed total enumeration:
/// |U| ascending, then |V| ascending, then display-lex on U, then on V.
/// Every pair (U,V) with U != 1, |U| >= |V| occurs exactly once.
inline std::vector<WordPair> enumerate_pairs(std::int64_t count) {
  if (count < 1) throw std::invalid_argument("enumerate_pairs: count >= 1");
  std::vector<WordPair> out;
  out.reserve(static_cast<std::size_t>(count));
  std::int64_t n = 0;
  for (int ulen = 1; n < count; ++ulen) {
    auto us = words_of_length(ulen);
    for (int vlen = 0; vlen <= ulen && n < count; ++vlen) {
      std::vector<ReducedWord> vs;
      if (vlen == 0)
        vs.push_back(ReducedWord());
      else
        vs = words_of_length(vlen);
      for (const auto& u : us) {
        for (const auto& v : vs) {
          if (n >= count) break;
          WordPair p;
          p.U = u;
          p.V = v;
          p.index = ++n;
          p.common_suffix_length = longest_common_suffix(u, v).length;
          out.push_back(std::move(p));
        }
        if (n >= count) break;
      }
    }
  }
  return out;
}

/// Number of enumerated pairs with |U| = j among the first `horizon` pairs.
/// Errors unless the horizon covers block j completely.
inline std::int64_t pair_block_count(int j, std::int64_t horizon) {
  if (j < 1) throw std::invalid_argument("pair_block_count: j >= 1");
  if (horizon < pair_blocks_cumulative(j))
    throw std::out_of_range("pair_block_count: horizon does not cover block");
  auto pairs = enumerate_pairs(horizon);
  std::int64_t c = 0;
  for (const auto& p : pairs)
    if (static_cast<int>(p.U.size()) == j) ++c;
  return c;
}

}  // namespace freediff
