// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_AUTOMATA_HPP
#define PATDIST_AUTOMATA_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "patdist/alphabet.hpp"

namespace patdist {

/// Partial DFA over a dense alphabet. Missing transitions lead to FAIL.
class DeterministicAutomaton {
 public:
  static constexpr std::int32_t kFail = -1;

  DeterministicAutomaton() = default;
  explicit DeterministicAutomaton(std::size_t alphabet_size)
      : alphabet_size_(alphabet_size) {}

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  std::int32_t initial() const noexcept { return 0; }

  std::int32_t next(std::int32_t state, Symbol symbol) const {
    return next_[static_cast<std::size_t>(state) * alphabet_size_ + symbol];
  }
  bool is_accepting(std::int32_t state) const {
    return accepting_[static_cast<std::size_t>(state)] != 0;
  }

  /// Final state after reading `word` from the initial state, or kFail.
  std::int32_t run(std::span<const Symbol> word) const;
  bool recognizes(std::span<const Symbol> word) const {
    return run(word) != kFail;
  }
  bool accepts(std::span<const Symbol> word) const {
    auto s = run(word);
    return s != kFail && is_accepting(s);
  }

  std::int32_t add_state();
  void set_next(std::int32_t state, Symbol symbol, std::int32_t target) {
    next_[static_cast<std::size_t>(state) * alphabet_size_ + symbol] = target;
  }
  void set_accepting(std::int32_t state, bool value) {
    accepting_[static_cast<std::size_t>(state)] = value ? 1 : 0;
  }

 private:
  std::size_t alphabet_size_ = 0;
  std::vector<std::int32_t> next_;
  std::vector<char> accepting_;
};

/// Suffix automaton (DAWG) of the reversed pattern. Accepting states are the
/// ones reached by suffixes of rev(p), the initial state included.
struct SuffixAutomaton {
  DeterministicAutomaton automaton;
  std::vector<std::int32_t> suffix_link;
  std::vector<std::int32_t> longest;
};

SuffixAutomaton build_suffix_automaton(const Pattern& pattern);

/// Factor oracle of the reversed pattern: m+1 states, state i+1 reached from
/// state i by rev(p)[i]. A state is accepting iff some suffix of rev(p)
/// ends in it.
struct FactorOracle {
  DeterministicAutomaton automaton;
  std::vector<std::int32_t> supply;
};

FactorOracle build_factor_oracle(const Pattern& pattern);

}  // namespace patdist

#endif  // PATDIST_AUTOMATA_HPP
