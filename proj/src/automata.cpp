// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/automata.hpp"

#include <algorithm>

namespace patdist {

std::int32_t DeterministicAutomaton::run(std::span<const Symbol> word) const {
  std::int32_t state = initial();
  for (Symbol a : word) {
    state = next(state, a);
    if (state == kFail) return kFail;
  }
  return state;
}

std::int32_t DeterministicAutomaton::add_state() {
  next_.resize(next_.size() + alphabet_size_, kFail);
  accepting_.push_back(0);
  return static_cast<std::int32_t>(accepting_.size() - 1);
}

// Online construction (Blumer et al.), one clone per split.
SuffixAutomaton build_suffix_automaton(const Pattern& pattern) {
  const Word word = pattern.reversed();
  SuffixAutomaton sa{DeterministicAutomaton(pattern.alphabet().size()), {}, {}};
  auto& dfa = sa.automaton;
  auto add = [&](std::int32_t link, std::int32_t len) {
    auto s = dfa.add_state();
    sa.suffix_link.push_back(link);
    sa.longest.push_back(len);
    return s;
  };

  std::int32_t last = add(-1, 0);
  for (Symbol c : word) {
    std::int32_t cur = add(0, sa.longest[last] + 1);
    std::int32_t p = last;
    while (p != -1 && dfa.next(p, c) == DeterministicAutomaton::kFail) {
      dfa.set_next(p, c, cur);
      p = sa.suffix_link[p];
    }
    if (p != -1) {
      std::int32_t q = dfa.next(p, c);
      if (sa.longest[p] + 1 == sa.longest[q]) {
        sa.suffix_link[cur] = q;
      } else {
        std::int32_t clone = add(sa.suffix_link[q], sa.longest[p] + 1);
        for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
          dfa.set_next(clone, static_cast<Symbol>(a),
                       dfa.next(q, static_cast<Symbol>(a)));
        }
        while (p != -1 && dfa.next(p, c) == q) {
          dfa.set_next(p, c, clone);
          p = sa.suffix_link[p];
        }
        sa.suffix_link[q] = clone;
        sa.suffix_link[cur] = clone;
      }
    }
    last = cur;
  }
  for (std::int32_t s = last; s != -1; s = sa.suffix_link[s]) {
    dfa.set_accepting(s, true);
  }
  return sa;
}

// Allauzen-Crochemore-Raffinot construction. Accepting flags come from
// running every suffix of the word, O(m^2).
FactorOracle build_factor_oracle(const Pattern& pattern) {
  const Word word = pattern.reversed();
  const auto m = word.size();
  FactorOracle fo{DeterministicAutomaton(pattern.alphabet().size()), {}};
  auto& dfa = fo.automaton;
  fo.supply.assign(m + 1, -1);
  dfa.add_state();
  for (std::size_t i = 0; i < m; ++i) {
    const Symbol a = word[i];
    const auto target = dfa.add_state();
    dfa.set_next(static_cast<std::int32_t>(i), a, target);
    std::int32_t k = fo.supply[i];
    while (k > -1 && dfa.next(k, a) == DeterministicAutomaton::kFail) {
      dfa.set_next(k, a, target);
      k = fo.supply[k];
    }
    fo.supply[i + 1] = (k == -1) ? 0 : dfa.next(k, a);
  }
  for (std::size_t j = 0; j <= m; ++j) {
    auto s = dfa.run(std::span<const Symbol>(word).subspan(j));
    dfa.set_accepting(s, true);
  }
  return fo;
}

}  // namespace patdist
