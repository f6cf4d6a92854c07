// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "patdist/automata.hpp"
#include "patdist/error.hpp"
#include "patdist/matchers.hpp"
#include "test_util.hpp"

using namespace patdist;
using patdist::testing::for_each_word;

namespace {

const Alphabet kDna("ACGT");
const Alphabet kAb("AB");

WindowOutcome eval(const WindowAnalysis& a, std::string_view w) {
  const auto word = a.pattern().alphabet().encode(w);
  return a.evaluate(word);
}

// All words of length <= max_len that the automaton does not send to FAIL.
std::set<std::string> recognized(const DeterministicAutomaton& dfa, const Alphabet& sigma,
                                 std::size_t max_len, bool accepting_only) {
  std::set<std::string> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for_each_word(sigma.size(), n, [&](const Word& w) {
      if (accepting_only ? dfa.accepts(w) : dfa.recognizes(w)) out.insert(sigma.decode(w));
    });
  }
  return out;
}

std::set<std::string> factors(const std::string& s) {
  std::set<std::string> out;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    for (std::size_t j = i; j <= s.size(); ++j) out.insert(s.substr(i, j - i));
  }
  return out;
}

}  // namespace

TEST_CASE("horspool window examples") {
  auto h = horspool_analysis(Pattern(kDna, "ACGTAC"));
  CHECK(eval(h, "TTTTTC").shift == 4);
  CHECK(eval(h, "ACGTAC").cost == 6);
  CHECK(eval(h, "ACGTAT").cost == 1);
  CHECK(h.horspool_shift(1) == 4);
  auto a6 = horspool_analysis(Pattern(kDna, "AAAAAA"));
  CHECK(eval(a6, "GGGGGC").shift == 6);
  CHECK(eval(a6, "AAAAAA").shift == 1);
}

TEST_CASE("horspool shift depends on the last window character only") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for_each_word(4, m, [&](const Word& p) {
      auto h = horspool_analysis(Pattern(kDna, p));
      for_each_word(4, m, [&](const Word& w) {
        REQUIRE(h.shift(w) == h.horspool_shift(w[m - 1]));
      });
    });
  }
}

TEST_CASE("suffix automaton of the reversed pattern") {
  auto sa = build_suffix_automaton(Pattern(kAb, "AB"));
  CHECK(recognized(sa.automaton, kAb, 3, false) == std::set<std::string>{"", "A", "B", "BA"});
  CHECK(recognized(sa.automaton, kAb, 3, true) == std::set<std::string>{"", "A", "BA"});
  auto one = build_suffix_automaton(Pattern(kAb, "A"));
  CHECK(recognized(one.automaton, kAb, 2, false) == std::set<std::string>{"", "A"});
  CHECK(recognized(one.automaton, kAb, 2, true) == std::set<std::string>{"", "A"});
  auto aab = build_suffix_automaton(Pattern(kAb, "AAB"));
  CHECK(recognized(aab.automaton, kAb, 4, false) ==
        std::set<std::string>{"", "A", "B", "AA", "BA", "BAA"});
}

TEST_CASE("suffix automaton recognizes exactly the factors") {
  const Alphabet sigma("ACG");
  for (std::size_t m = 1; m <= 5; ++m) {
    for_each_word(3, m, [&](const Word& p) {
      const Pattern pat(sigma, p);
      auto sa = build_suffix_automaton(pat);
      std::string rev = pat.to_string();
      std::reverse(rev.begin(), rev.end());
      const auto f = factors(rev);
      REQUIRE(recognized(sa.automaton, sigma, m + 1, false) == f);
      std::set<std::string> suffixes;
      for (std::size_t i = 0; i <= m; ++i) suffixes.insert(rev.substr(i));
      REQUIRE(recognized(sa.automaton, sigma, m + 1, true) == suffixes);
      REQUIRE(sa.automaton.state_count() <= std::max<std::size_t>(2 * m - 1, m + 1));
    });
  }
}

TEST_CASE("factor oracle") {
  auto fo = build_factor_oracle(Pattern(kAb, "AB"));
  CHECK(fo.automaton.state_count() == 3);
  CHECK(recognized(fo.automaton, kAb, 2, false) == std::set<std::string>{"", "A", "B", "BA"});
  CHECK(recognized(fo.automaton, kAb, 2, true) == std::set<std::string>{"", "A", "BA"});
  auto one = build_factor_oracle(Pattern(kAb, "A"));
  CHECK(one.automaton.state_count() == 2);
  CHECK(recognized(one.automaton, kAb, 2, false) == std::set<std::string>{"", "A"});

  // m+1 states, all factors recognized, and the only length-m word is the
  // reversed pattern itself.
  const Alphabet sigma("ACG");
  for (std::size_t m = 1; m <= 5; ++m) {
    for_each_word(3, m, [&](const Word& p) {
      const Pattern pat(sigma, p);
      auto oracle = build_factor_oracle(pat);
      REQUIRE(oracle.automaton.state_count() == m + 1);
      std::string rev = pat.to_string();
      std::reverse(rev.begin(), rev.end());
      const auto rec = recognized(oracle.automaton, sigma, m, false);
      for (const auto& f : factors(rev)) REQUIRE(rec.count(f));
      for (const auto& s : rec) REQUIRE((s.size() < m || s == rev));
    });
  }
}

TEST_CASE("bdm window examples") {
  auto b = bdm_analysis(Pattern(kAb, "AB"));
  CHECK(eval(b, "AA").cost == 2);
  CHECK(eval(b, "AA").shift == 1);
  CHECK(eval(b, "BB").cost == 2);
  CHECK(eval(b, "BB").shift == 2);
  CHECK(eval(b, "AB").cost == 2);
  CHECK(eval(b, "AB").shift == 2);
  CHECK(b.shift_candidates(kAb.encode("BB")) == std::vector<int>{0});
  CHECK(b.shift_candidates(kAb.encode("AA")) == std::vector<int>{0, 1});
}

TEST_CASE("bom window examples") {
  auto b = bom_analysis(Pattern(kAb, "AB"));
  CHECK(eval(b, "AA").cost == 2);
  CHECK(eval(b, "AA").shift == 1);
  CHECK(eval(b, "BB").cost == 2);
  // The oracle survives the first B, so the failing second read gives
  // m - 2 + 1 = 1.
  CHECK(eval(b, "BB").shift == 1);
  CHECK(eval(b, "AB").cost == 2);
  CHECK(eval(b, "AB").shift == 1);
  CHECK(eval(b, "BA").cost == 2);
  CHECK(eval(b, "BA").shift == 1);
}

TEST_CASE("window functions stay in range") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for_each_word(4, m, [&](const Word& p) {
      const Pattern pat(kDna, p);
      for (auto algo : {Algorithm::kHorspool, Algorithm::kBdm, Algorithm::kBom}) {
        auto a = make_analysis(algo, pat);
        for_each_word(4, m, [&](const Word& w) {
          const auto out = a.evaluate(w);
          REQUIRE(out.cost >= 1);
          REQUIRE(out.cost <= static_cast<int>(m));
          REQUIRE(out.shift >= 1);
          REQUIRE(out.shift <= static_cast<int>(m));
          if (w == p) REQUIRE(out.cost == static_cast<int>(m));
        });
      }
    });
  }
}

TEST_CASE("bdm cost is one more than the longest suffix that is a factor") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for_each_word(4, m, [&](const Word& p) {
      auto b = bdm_analysis(Pattern(kDna, p));
      const auto ps = kDna.decode(p);
      for_each_word(4, m, [&](const Word& w) {
        const auto ws = kDna.decode(w);
        std::size_t longest = 0;
        while (longest < m && ps.find(ws.substr(m - longest - 1)) != std::string::npos) {
          ++longest;
        }
        REQUIRE(b.cost(w) == static_cast<int>(std::min(m, longest + 1)));
        if (w == p) REQUIRE(longest == m);
      });
    });
  }
}

TEST_CASE("bom never shifts further than bdm and reads at least as much") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for_each_word(4, m, [&](const Word& p) {
      const Pattern pat(kDna, p);
      auto bdm = bdm_analysis(pat);
      auto bom = bom_analysis(pat);
      for_each_word(4, m, [&](const Word& w) {
        REQUIRE(bom.shift(w) <= bdm.shift(w));
        REQUIRE(bom.cost(w) >= bdm.cost(w));
        const auto ib = bdm.shift_candidates(w);
        const auto io = bom.shift_candidates(w);
        for (int i : ib) REQUIRE(std::find(io.begin(), io.end(), i) != io.end());
      });
    });
  }
}

TEST_CASE("run_matcher examples") {
  auto h = horspool_analysis(Pattern(kAb, "AB"));
  CHECK(run_matcher(h, kAb.encode("ABAB")) == MatchResult{2, 4});
  auto aa = horspool_analysis(Pattern(kAb, "AA"));
  CHECK(run_matcher(aa, kAb.encode("AAAA")) == MatchResult{3, 6});
  for (auto algo : {Algorithm::kHorspool, Algorithm::kBdm, Algorithm::kBom}) {
    auto a = make_analysis(algo, Pattern(kAb, "ABA"));
    CHECK(run_matcher(a, kAb.encode("AB")) == MatchResult{0, 0});
    CHECK(run_matcher(a, Word{}) == MatchResult{0, 0});
  }
}

TEST_CASE("generic window loop agrees with the textbook matchers") {
  const Alphabet sigma("ACG");
  std::mt19937_64 rng(7);
  for (std::size_t m = 1; m <= 5; ++m) {
    for_each_word(3, m, [&](const Word& p) {
      const Pattern pat(sigma, p);
      for (auto algo : {Algorithm::kHorspool, Algorithm::kBdm, Algorithm::kBom}) {
        auto a = make_analysis(algo, pat);
        for (int rep = 0; rep < 5; ++rep) {
          const auto text = patdist::testing::random_word(rng, 3, 40);
          const auto got = run_matcher(a, text);
          const auto want = reference_match(algo, pat, text);
          REQUIRE(got == want);
        }
      }
    });
  }
}

TEST_CASE("occurrences are counted correctly") {
  const Alphabet sigma("AC");
  for (std::size_t m = 1; m <= 3; ++m) {
    for_each_word(2, m, [&](const Word& p) {
      for_each_word(2, 9, [&](const Word& s) {
        std::uint64_t occ = 0;
        for (std::size_t i = 0; i + m <= s.size(); ++i) {
          occ += std::equal(p.begin(), p.end(), s.begin() + static_cast<std::ptrdiff_t>(i));
        }
        for (auto algo : {Algorithm::kHorspool, Algorithm::kBdm, Algorithm::kBom}) {
          REQUIRE(reference_match(algo, Pattern(sigma, p), s).occurrences == occ);
        }
      });
    });
  }
}

TEST_CASE("kmp baseline") {
  for (std::int64_t n : {0, 100, 500}) {
    auto d = kmp_distribution(n);
    CHECK(d.size() == 1);
    CHECK(d.probability(n) == 1.0);
  }
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("horspool") == Algorithm::kHorspool);
  CHECK(parse_algorithm("BNDM") == Algorithm::kBdm);
  CHECK(parse_algorithm("b(n)dm") == Algorithm::kBdm);
  CHECK(parse_algorithm("bom") == Algorithm::kBom);
  CHECK_FALSE(parse_algorithm("kmp2").has_value());
  CHECK(to_string(Algorithm::kBom) == "bom");
}

TEST_CASE("alphabet and pattern validation") {
  CHECK_THROWS_AS(Alphabet(""), Error);
  CHECK_THROWS_AS(Alphabet("AA"), Error);
  CHECK_THROWS_AS(Pattern(kDna, "ACX"), Error);
  CHECK_THROWS_AS(Pattern(kDna, ""), Error);
  CHECK(kDna.bits_per_symbol() == 2);
  CHECK(Alphabet("A").bits_per_symbol() == 1);
  CHECK(Alphabet("ACGTN").bits_per_symbol() == 3);
  CHECK(kDna.decode(kDna.encode("GATTACA")) == "GATTACA");
}
