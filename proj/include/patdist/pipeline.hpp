// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_PIPELINE_HPP
#define PATDIST_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patdist/daa.hpp"
#include "patdist/distribution.hpp"
#include "patdist/matchers.hpp"
#include "patdist/textmodel.hpp"

namespace patdist {

struct CostResult {
  Distribution distribution;
  std::size_t raw_states = 0;
  std::size_t minimized_states = 0;
  std::size_t paa_states = 0;
};

/// build_cost_daa -> minimize_daa -> build_paa -> cost_distribution.
CostResult compute_cost_distribution(const WindowAnalysis& analysis,
                                     const TextModel& model, std::int64_t n,
                                     std::size_t state_cap = default_state_cap());

/// All |Σ|^m patterns of length m in lexicographic order of symbol indices.
std::vector<Pattern> enumerate_patterns(const Alphabet& alphabet, std::size_t m);

struct SweepRow {
  Algorithm algorithm = Algorithm::kHorspool;
  std::size_t patterns = 0;
  std::size_t min_states = 0;
  std::size_t max_states = 0;
  double average_states = 0.0;
  /// |Σ|^m (m+1).
  std::uint64_t full_space = 0;
  /// False if some pattern breached the state cap; statistics then cover
  /// the completed patterns only.
  bool complete = true;
  std::string error;
  /// Minimized size per pattern, 0 where construction failed.
  std::vector<std::size_t> sizes;
};

std::vector<SweepRow> sweep_automaton_sizes(const Alphabet& alphabet, std::size_t m,
                                            std::span<const Algorithm> algorithms,
                                            std::size_t state_cap = default_state_cap(),
                                            unsigned threads = 1);

/// A fixed order-1 Markov model used as the non-i.i.d. verification case:
/// start weights i+1, next-symbol weights 1 + 2[a = b] + a after symbol b.
TextModel reference_markov_model(const Alphabet& alphabet);

struct VerifyOptions {
  std::size_t max_m = 3;
  std::size_t max_n = 10;
  /// Also check every ordered pair of distinct algorithms through the
  /// difference automaton.
  bool difference_mode = false;
  /// Defaults to the uniform model and reference_markov_model().
  std::vector<TextModel> models;
  /// Builds the analysis behind the automaton side. Defaults to
  /// make_analysis; the enumeration side always uses reference_match.
  std::function<WindowAnalysis(Algorithm, const Pattern&)> make_analysis;
  std::vector<Algorithm> algorithms{Algorithm::kHorspool, Algorithm::kBdm,
                                    Algorithm::kBom};
  double tolerance = 1e-9;
  unsigned threads = 1;
};

struct VerifyReport {
  bool passed = true;
  double max_deviation = 0.0;
  std::size_t distribution_checks = 0;
  std::size_t value_checks = 0;
  /// First failure in job order, empty when passed.
  std::string counterexample;
};

/// Compares automaton-derived laws and values against exhaustive text
/// enumeration weighted by string_probability. Requires |Σ|^max_n <= 10^7.
VerifyReport verify_exhaustive(const Alphabet& alphabet, const VerifyOptions& options);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Exceptions
/// are rethrown after all workers finish (first in index order).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace patdist

#endif  // PATDIST_PIPELINE_HPP
