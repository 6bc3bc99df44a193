#include "freediff/words.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <vector>

using namespace freediff;

namespace {

ReducedWord W(const std::string& s) { return ReducedWord::from_string(s); }

TEST(Reduce, InversePairCancels) {
  EXPECT_EQ(ReducedWord::reduce({Letter::F, Letter::f}).to_string(), "1");
  // display "fF" is the sequence [F, f] in application order
}

TEST(Reduce, InnerCancellation) {
  // f g g^-1 f, applied-first = rightmost: display "fgGf"
  std::vector<Letter> seq = {Letter::f, Letter::G, Letter::g, Letter::f};
  EXPECT_EQ(ReducedWord::reduce(seq).to_string(), "ff");
}

TEST(Reduce, FullCascade) {
  // display "GffF" hmm: g^-1 f f^-1 g cancels fully
  std::vector<Letter> seq = {Letter::g, Letter::F, Letter::f, Letter::G};
  EXPECT_EQ(ReducedWord::reduce(seq).to_string(), "1");
}

TEST(Reduce, IdempotentOnReduced) {
  auto w = W("ffgFG");
  EXPECT_EQ(ReducedWord::reduce(std::span<const Letter>(w.letters())), w);
}

TEST(Concat, Examples) {
  EXPECT_EQ(concat(W("f"), W("F")).to_string(), "1");
  EXPECT_EQ(concat(W("fg"), W("Gf")).to_string(), "ff");
  EXPECT_EQ(concat(ReducedWord(), W("fgF")), W("fgF"));
}

TEST(Concat, LengthSubadditiveAndAssociative) {
  auto words = words_of_length(3);
  for (std::size_t i = 0; i < words.size(); i += 7) {
    for (std::size_t j = 0; j < words.size(); j += 11) {
      auto ab = concat(words[i], words[j]);
      EXPECT_LE(ab.size(), words[i].size() + words[j].size());
      for (std::size_t k = 0; k < words.size(); k += 13) {
        EXPECT_EQ(concat(ab, words[k]),
                  concat(words[i], concat(words[j], words[k])));
      }
    }
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(W("fg")).to_string(), "GF");
  EXPECT_EQ(inverse(ReducedWord()).to_string(), "1");
  EXPECT_EQ(inverse(W("ff")).to_string(), "FF");
  for (const auto& w : words_of_length(4))
    EXPECT_TRUE(concat(w, inverse(w)).empty());
}

TEST(Suffix, Examples) {
  EXPECT_TRUE(is_suffix(W("g"), W("fg")));
  EXPECT_FALSE(is_suffix(W("f"), W("fg")));
  EXPECT_TRUE(is_suffix(W("fg"), W("fg")));
}

TEST(LongestCommonSuffix, Examples) {
  auto cs = longest_common_suffix(W("fg"), W("gg"));
  EXPECT_EQ(cs.word.to_string(), "g");
  EXPECT_EQ(cs.length, 1u);
  auto u = W("fGg");  // not reduced
  EXPECT_THROW(ReducedWord::from_string("fGg"), std::invalid_argument);
  (void)u;
  auto self = longest_common_suffix(W("fgF"), W("fgF"));
  EXPECT_EQ(self.length, 3u);
  EXPECT_EQ(longest_common_suffix(W("f"), W("g")).length, 0u);
}

TEST(StageWords, Examples) {
  auto st = W("fg").stage_words();
  ASSERT_EQ(st.size(), 3u);
  EXPECT_EQ(st[0].to_string(), "1");
  EXPECT_EQ(st[1].to_string(), "g");
  EXPECT_EQ(st[2].to_string(), "fg");
  EXPECT_EQ(ReducedWord().stage_words().size(), 1u);
  auto st2 = W("Fgf").stage_words();
  ASSERT_EQ(st2.size(), 4u);
  EXPECT_EQ(st2[1].to_string(), "f");
  EXPECT_EQ(st2[2].to_string(), "gf");
  EXPECT_EQ(st2[3].to_string(), "Fgf");
}

TEST(WordCounts, Formula) {
  EXPECT_EQ(word_count(1), 4);
  EXPECT_EQ(word_count(2), 12);
  EXPECT_EQ(word_count(3), 36);
  EXPECT_EQ(words_of_length(1).size(), 4u);
  EXPECT_EQ(words_of_length(2).size(), 12u);
  EXPECT_EQ(words_of_length(3).size(), 36u);
  EXPECT_THROW(word_count(64), std::overflow_error);
  EXPECT_THROW(word_count(0), std::invalid_argument);
}

TEST(ReduceConfluence, ExhaustiveSmall) {
  // reduce(x ++ y) == concat(reduce(x), reduce(y)) for |x| + |y| <= 8.
  std::vector<std::vector<Letter>> seqs = {{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& s : seqs) {
      if (static_cast<int>(s.size()) != len - 1) continue;
      for (Letter a : kLetters) {
        auto v = s;
        v.push_back(a);
        next.push_back(v);
      }
    }
    for (auto& v : next) seqs.push_back(std::move(v));
  }
  for (const auto& x : seqs) {
    for (const auto& y : seqs) {
      std::vector<Letter> xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      auto lhs = ReducedWord::reduce(std::span<const Letter>(xy));
      auto rhs = concat(ReducedWord::reduce(std::span<const Letter>(x)),
                        ReducedWord::reduce(std::span<const Letter>(y)));
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(EnumeratePairs, FirstFive) {
  auto pairs = enumerate_pairs(5);
  ASSERT_EQ(pairs.size(), 5u);
  EXPECT_EQ(pairs[0].U.to_string(), "f");
  EXPECT_EQ(pairs[0].V.to_string(), "1");
  EXPECT_EQ(pairs[1].U.to_string(), "F");
  EXPECT_EQ(pairs[2].U.to_string(), "g");
  EXPECT_EQ(pairs[3].U.to_string(), "G");
  EXPECT_EQ(pairs[4].U.to_string(), "f");
  EXPECT_EQ(pairs[4].V.to_string(), "f");
  EXPECT_EQ(pairs[4].common_suffix_length, 1u);
}

TEST(EnumeratePairs, OrderingConditions) {
  auto pairs = enumerate_pairs(500);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    EXPECT_GE(p.U.size(), p.V.size());          // (a1)
    EXPECT_FALSE(p.U.empty());                  // (a4)
    EXPECT_EQ(p.index, std::int64_t(i + 1));
    if (i > 0) {
      const auto& q = pairs[i - 1];
      EXPECT_GE(p.U.size(), q.U.size());  // (a2)
      if (p.U.size() == q.U.size())
        EXPECT_GE(p.V.size(), q.V.size());  // (a3)
    }
  }
}

TEST(EnumeratePairs, SurjectiveInjectiveUpTo3) {
  // Brute-force oracle: all (U, V) with U != 1, |U| >= |V|, |U| <= 3.
  std::set<std::pair<std::string, std::string>> expected;
  std::vector<ReducedWord> all;
  all.push_back(ReducedWord());
  for (int l = 1; l <= 3; ++l)
    for (const auto& w : words_of_length(l)) all.push_back(w);
  for (const auto& u : all) {
    if (u.empty()) continue;
    for (const auto& v : all)
      if (u.size() >= v.size())
        expected.insert({u.to_string(), v.to_string()});
  }
  std::int64_t total = pair_blocks_cumulative(3);
  EXPECT_EQ(total, 20 + 204 + 1908);
  auto pairs = enumerate_pairs(total);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& p : pairs) {
    auto key = std::make_pair(p.U.to_string(), p.V.to_string());
    EXPECT_TRUE(got.insert(key).second) << "duplicate pair";  // (a6)
    EXPECT_LE(p.U.size(), 3u);
  }
  EXPECT_EQ(got, expected);  // (a5) restricted to |U| <= 3
}

TEST(EnumeratePairs, SuffixDataConsistent) {
  for (const auto& p : enumerate_pairs(300)) {
    auto cs = longest_common_suffix(p.U, p.V);
    EXPECT_EQ(cs.length, p.common_suffix_length);
    EXPECT_TRUE(is_suffix(cs.word, p.U));
    EXPECT_TRUE(is_suffix(cs.word, p.V));
  }
}

TEST(PairBlockCount, ClosedForm) {
  EXPECT_EQ(pair_block_size(1), 20);
  EXPECT_EQ(pair_block_size(2), 204);
  EXPECT_EQ(pair_block_count(1, 20), 20);
  EXPECT_EQ(pair_block_count(2, 224), 204);
  EXPECT_THROW(pair_block_count(1, 10), std::out_of_range);
}

TEST(PairULength, MatchesEnumeration) {
  auto pairs = enumerate_pairs(400);
  for (const auto& p : pairs)
    EXPECT_EQ(pair_u_length(p.index), static_cast<int>(p.U.size()));
}

TEST(Serialization, RoundTrip) {
  for (const auto& w : words_of_length(4)) {
    EXPECT_EQ(ReducedWord::from_string(w.to_string()), w);
  }
  EXPECT_EQ(ReducedWord::from_string("1").size(), 0u);
}

}  // namespace
