// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "patdist/daa.hpp"
#include "patdist/error.hpp"
#include "patdist/paa.hpp"
#include "patdist/pipeline.hpp"
#include "test_util.hpp"

using namespace patdist;
using patdist::testing::brute_force_law;
using patdist::testing::max_deviation;

namespace {

const Alphabet kDna("ACGT");
const Alphabet kAb("AB");
constexpr Algorithm kAll[] = {Algorithm::kHorspool, Algorithm::kBdm, Algorithm::kBom};

Daa minimized(Algorithm algo, const Pattern& p) {
  return minimize_daa(build_cost_daa(make_analysis(algo, p)));
}

void check_rows(const Paa& paa) {
  for (std::size_t q = 0; q < paa.state_count(); ++q) {
    double sum = 0.0;
    for (const auto& e : paa.row(static_cast<std::int32_t>(q))) {
      REQUIRE(e.prob > 0.0);
      sum += e.prob;
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-9);
  }
}

}  // namespace

TEST_CASE("paa products") {
  auto d = minimized(Algorithm::kHorspool, Pattern(kDna, "ACGTAC"));
  auto iid = build_paa(d, uniform_model(kDna));
  CHECK(iid.state_count() == d.state_count());
  CHECK(iid.used_reduced_product());
  check_rows(iid);
  for (std::size_t q = 0; q < iid.state_count(); ++q) {
    for (const auto& e : iid.row(static_cast<std::int32_t>(q))) {
      const double k = e.prob * 4;
      REQUIRE(std::abs(k - std::round(k)) < 1e-12);
    }
  }

  auto markov = markov_model(kAb, 1, {{"", {0.5, 0.5}}, {"A", {0.9, 0.1}}, {"B", {0.2, 0.8}}});
  auto hab = minimized(Algorithm::kHorspool, Pattern(kAb, "AB"));
  auto pm = build_paa(hab, markov);
  check_rows(pm);
  CHECK(pm.state_count() <= hab.state_count() * markov.context_count());

  CHECK_THROWS_AS(build_paa(hab, uniform_model(kDna)), Error);
}

TEST_CASE("short texts give a point mass at zero") {
  auto paa = build_paa(minimized(Algorithm::kBdm, Pattern(kDna, "ACGT")), uniform_model(kDna));
  for (std::int64_t n = 0; n < 4; ++n) {
    auto d = cost_distribution(paa, n);
    CHECK(d.size() == 1);
    CHECK(d.probability(0) == 1.0);
  }
  CHECK(cost_distribution(paa, 4).min_value() >= 1);
}

TEST_CASE("pattern AB, n = 6 against all 64 texts") {
  const Pattern p(kAb, "AB");
  const auto model = uniform_model(kAb);
  for (auto algo : kAll) {
    auto d = cost_distribution(build_paa(minimized(algo, p), model), 6);
    auto law = brute_force_law(model, 6, [&](const Word& s) {
      return static_cast<std::int64_t>(reference_match(algo, p, s).cost);
    });
    CHECK(max_deviation(d, law) <= 1e-12);
    double mean = 0.0;
    for (const auto& [v, pr] : law) mean += static_cast<double>(v) * pr;
    CHECK(distribution_stats(d).mean == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("general and reduced products agree") {
  const auto model = patdist::testing::small_markov();
  for (auto algo : kAll) {
    auto d = minimized(algo, Pattern(Alphabet("AC"), "ACA"));
    auto fast = build_paa(d, model);
    auto slow = build_paa(d, model, PaaOptions{true});
    CHECK(fast.used_reduced_product());
    CHECK_FALSE(slow.used_reduced_product());
    check_rows(slow);
    auto a = cost_distribution(fast, 25);
    auto b = cost_distribution(slow, 25);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.entries()[i].first == b.entries()[i].first);
      CHECK(a.entries()[i].second == doctest::Approx(b.entries()[i].second).epsilon(1e-12));
    }
  }
}

TEST_CASE("non-deterministic context models") {
  TextModel hmm(TextModelSpec{Alphabet("AC"),
                              {"x", "y"},
                              0,
                              {{0, 0, 0, 0.4},
                               {0, 0, 1, 0.1},
                               {0, 1, 1, 0.5},
                               {1, 0, 0, 0.2},
                               {1, 1, 0, 0.3},
                               {1, 1, 1, 0.5}}});
  const Pattern p(Alphabet("AC"), "CA");
  for (auto algo : kAll) {
    auto paa = build_paa(minimized(algo, p), hmm);
    CHECK_FALSE(paa.used_reduced_product());
    check_rows(paa);
    auto d = cost_distribution(paa, 9);
    auto law = brute_force_law(hmm, 9, [&](const Word& s) {
      return static_cast<std::int64_t>(reference_match(algo, p, s).cost);
    });
    CHECK(max_deviation(d, law) <= 1e-12);
  }
}

TEST_CASE("support bounds and mass") {
  const Pattern p(kDna, "ACGTAC");
  const auto model = uniform_model(kDna);
  for (auto algo : kAll) {
    auto all = cost_distributions_upto(build_paa(minimized(algo, p), model), 100);
    REQUIRE(all.size() == 101);
    for (std::int64_t n = 0; n <= 100; ++n) {
      const auto& d = all[n];
      REQUIRE(std::abs(d.total_mass() - 1.0) <= 1e-9);
      const std::int64_t windows = std::max<std::int64_t>(0, n - 6 + 1);
      REQUIRE(d.min_value() >= (windows + 5) / 6);
      REQUIRE(d.max_value() <= 6 * windows);
    }
  }
  // Windows ending in C shift by 4, so a periodic text reads 144 characters.
  auto h = horspool_analysis(p);
  std::string text;
  for (int i = 0; i < 25; ++i) text += "ACGT";
  CHECK(run_matcher(h, kDna.encode(text)).cost == 144);
  auto d = compute_cost_distribution(h, model, 100).distribution;
  CHECK(d.probability(144) > 0.0);
  CHECK(d.max_value() >= 144);
}

TEST_CASE("distribution statistics") {
  auto dirac = Distribution::dirac(100);
  auto s = distribution_stats(dirac);
  CHECK(s.mean == 100.0);
  CHECK(s.variance == 0.0);
  Distribution two({{0, 0.5}, {2, 0.5}});
  auto t = distribution_stats(two);
  CHECK(t.mean == 1.0);
  CHECK(t.variance == 1.0);
  CHECK(quantile(two, 0.5) == 0);
  CHECK(quantile(two, 0.51) == 2);
  CHECK(two.sign_summary().greater == 0.5);
  CHECK_THROWS_AS(Distribution({{1, -0.1}}), Error);
  Distribution merged({{3, 0.25}, {1, 0.5}, {3, 0.25}, {7, 0.0}});
  CHECK(merged.size() == 2);
  CHECK(merged.probability(3) == 0.5);
}

TEST_CASE("csv and json output") {
  auto d = compute_cost_distribution(horspool_analysis(Pattern(kDna, "ACG")),
                                     uniform_model(kDna), 12)
               .distribution;
  std::ostringstream csv;
  write_csv(csv, d);
  const auto text = csv.str();
  CHECK(text.rfind("value,probability\n", 0) == 0);
  std::istringstream in(text);
  auto back = read_csv(in);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.entries()[i] == d.entries()[i]);
  }
  std::ostringstream json;
  write_json(json, d);
  const auto j = json.str();
  CHECK(j.find("\"algorithm\": \"horspool\"") != std::string::npos);
  CHECK(j.find("\"pmf\"") != std::string::npos);
  CHECK(j.find("\"mean\"") != std::string::npos);

  Distribution bad({{1, 0.5}});
  std::ostringstream sink;
  CHECK_THROWS_AS(write_csv(sink, bad), Error);
  std::istringstream junk("nope\n1,1\n");
  CHECK_THROWS_AS(read_csv(junk), Error);
}

TEST_CASE("monte carlo sampling") {
  const Pattern p(kDna, "ACGTAC");
  const auto model = uniform_model(kDna);
  auto h = horspool_analysis(p);
  auto a = monte_carlo_distribution(h, model, 100, 2000, 42);
  auto b = monte_carlo_distribution(h, model, 100, 2000, 42);
  CHECK(a.distribution.entries() == b.distribution.entries());
  CHECK(a.mean == b.mean);
  auto one = monte_carlo_distribution(h, model, 100, 1, 5);
  CHECK(one.distribution.size() == 1);
  auto tiny = monte_carlo_distribution(h, model, 5, 100, 5);
  CHECK(tiny.distribution.size() == 1);
  CHECK(tiny.distribution.probability(0) == 1.0);

  const double exact = distribution_stats(compute_cost_distribution(h, model, 100).distribution).mean;
  auto big = monte_carlo_distribution(h, model, 100, 20000, 9);
  CHECK(std::abs(big.mean - exact) <= 4 * big.standard_error);

  auto hmm_model = patdist::testing::small_markov();
  auto hb = bdm_analysis(Pattern(Alphabet("AC"), "CA"));
  const double exact_m =
      distribution_stats(compute_cost_distribution(hb, hmm_model, 30).distribution).mean;
  auto mm = monte_carlo_distribution(hb, hmm_model, 30, 20000, 10);
  CHECK(std::abs(mm.mean - exact_m) <= 4 * mm.standard_error);
}

TEST_CASE("exact rational certification") {
  for (auto algo : kAll) {
    auto d = minimized(algo, Pattern(kDna, "ACG"));
    auto c = certify_distribution(d, uniform_model(kDna), 20);
    CHECK(c.max_abs_deviation <= 1e-12);
    auto cm = certify_distribution(minimized(algo, Pattern(Alphabet("AC"), "CA")),
                                   patdist::testing::small_markov(), 20);
    CHECK(cm.max_abs_deviation <= 1e-12);
  }
  auto d = minimized(Algorithm::kBdm, Pattern(kDna, "ACG"));
  CHECK_THROWS_AS(certify_distribution(d, uniform_model(kDna), 21), Error);
}
