// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_DAA_HPP
#define PATDIST_DAA_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "patdist/alphabet.hpp"
#include "patdist/matchers.hpp"

namespace patdist {

enum class ValueDomain { kNatural, kInteger };

inline constexpr std::size_t kDefaultStateCap = 5'000'000;

/// Default cap on reachable states, overridable via PATDIST_STATE_CAP.
std::size_t default_state_cap();

/// Deterministic arithmetic automaton restricted to additive semantics:
/// entering state q adds emission(q) to the running value, which starts at 0.
/// The start state's own emission is never added on entry.
class Daa {
 public:
  using State = std::int32_t;

  Daa(Alphabet alphabet, std::vector<State> transitions,
      std::vector<std::int64_t> emissions, State start, ValueDomain domain);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t state_count() const noexcept { return emissions_.size(); }
  State start() const noexcept { return start_; }
  ValueDomain domain() const noexcept { return domain_; }

  State next(State q, Symbol a) const {
    return transitions_[static_cast<std::size_t>(q) * alphabet_size() + a];
  }
  std::int64_t emission(State q) const {
    return emissions_[static_cast<std::size_t>(q)];
  }
  std::span<const std::int64_t> emissions() const noexcept { return emissions_; }

 private:
  Alphabet alphabet_;
  std::vector<State> transitions_;
  std::vector<std::int64_t> emissions_;
  State start_;
  ValueDomain domain_;
};

/// Reachable part of the window automaton over labels (w, x): w holds the
/// last m read symbols and x the symbols still missing to the next window
/// end. Throws Error(kStateCapExceeded) beyond `state_cap` states.
Daa build_cost_daa(const WindowAnalysis& analysis,
                   std::size_t state_cap = default_state_cap());

/// |Σ|^m (m+1), the size of the full label space.
std::uint64_t full_state_space_size(std::size_t alphabet_size, std::size_t m);

std::int64_t daa_value(const Daa& daa, std::span<const Symbol> text);

/// Hopcroft partition refinement started from the emission classes. The
/// result is renumbered in breadth-first order from the start state, so
/// equal behaviour gives identical automata.
Daa minimize_daa(const Daa& daa);

/// Plain-text listing: header, then `state <i> <emission>` lines, then
/// `edge <from> <symbol> <to>` lines.
void write_daa_dump(std::ostream& out, const Daa& daa);

}  // namespace patdist

#endif  // PATDIST_DAA_HPP
