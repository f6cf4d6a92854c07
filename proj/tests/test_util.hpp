// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_TESTS_TEST_UTIL_HPP
#define PATDIST_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "patdist/alphabet.hpp"
#include "patdist/distribution.hpp"
#include "patdist/matchers.hpp"
#include "patdist/textmodel.hpp"

namespace patdist::testing {

// Calls fn on every word of length n over {0..k-1}, lexicographically.
inline void for_each_word(std::size_t k, std::size_t n,
                          const std::function<void(const Word&)>& fn) {
  Word w(n, 0);
  while (true) {
    fn(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1u == k) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

inline Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(k) - 1);
  Word w(n);
  for (auto& c : w) c = static_cast<Symbol>(pick(rng));
  return w;
}

// Law of f(text) under the model, by summing over all texts of length n.
inline std::map<std::int64_t, double> brute_force_law(
    const TextModel& model, std::size_t n,
    const std::function<std::int64_t(const Word&)>& f) {
  std::map<std::int64_t, double> law;
  for_each_word(model.alphabet().size(), n, [&](const Word& s) {
    const double p = string_probability(model, s);
    if (p > 0.0) law[f(s)] += p;
  });
  return law;
}

inline double max_deviation(const Distribution& d,
                            const std::map<std::int64_t, double>& law) {
  double dev = 0.0;
  for (const auto& [v, p] : law) dev = std::max(dev, std::abs(d.probability(v) - p));
  for (const auto& [v, p] : d.entries()) {
    if (!law.count(v)) dev = std::max(dev, p);
  }
  return dev;
}

// Order-1 Markov chain over {A,C} used throughout the tests.
inline TextModel small_markov() {
  return markov_model(Alphabet("AC"), 1,
                      {{"", {0.3, 0.7}}, {"A", {0.9, 0.1}}, {"C", {0.4, 0.6}}});
}

}  // namespace patdist::testing

#endif  // PATDIST_TESTS_TEST_UTIL_HPP
