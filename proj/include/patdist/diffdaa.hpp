// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_DIFFDAA_HPP
#define PATDIST_DIFFDAA_HPP

#include <cstddef>
#include <cstdint>

#include "patdist/daa.hpp"
#include "patdist/distribution.hpp"
#include "patdist/matchers.hpp"
#include "patdist/textmodel.hpp"

namespace patdist {

/// Reachable product of two additive DAAs; state (q1, q2) emits
/// emission1(q1) - emission2(q2), so the value is value1 - value2. The
/// result is not minimized.
Daa build_difference_daa(const Daa& a, const Daa& b,
                         std::size_t state_cap = default_state_cap());

struct DifferenceResult {
  Distribution distribution;
  DifferenceSummary summary;
  std::size_t states_a = 0;
  std::size_t states_b = 0;
  std::size_t minimized_a = 0;
  std::size_t minimized_b = 0;
  std::size_t product_states = 0;
  std::size_t minimized_product = 0;
  std::size_t paa_states = 0;
};

/// Law of cost_A - cost_B on random texts of length n. Both cost DAAs are
/// minimized, multiplied, and the product minimized again before the PAA.
DifferenceResult difference_distribution(const WindowAnalysis& a,
                                         const WindowAnalysis& b,
                                         const TextModel& model, std::int64_t n,
                                         std::size_t state_cap = default_state_cap());

}  // namespace patdist

#endif  // PATDIST_DIFFDAA_HPP
