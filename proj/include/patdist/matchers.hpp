// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_MATCHERS_HPP
#define PATDIST_MATCHERS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patdist/alphabet.hpp"
#include "patdist/automata.hpp"
#include "patdist/distribution.hpp"

namespace patdist {

/// B(N)DM is a single tag: BDM and BNDM read exactly the same characters.
enum class Algorithm { kHorspool, kBdm, kBom };

std::string_view to_string(Algorithm algorithm) noexcept;
/// Accepts "horspool", "bdm", "bndm", "b(n)dm" and "bom" (case-insensitive).
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct WindowOutcome {
  int cost = 0;
  int shift = 0;
};

/// Cost and shift of a window-based matcher for one pattern, evaluated on
/// demand for a window w of length m. Immutable; cheap to copy.
class WindowAnalysis {
 public:
  using WindowFunction =
      std::function<WindowOutcome(std::span<const Symbol> window)>;

  /// Analysis backed by an arbitrary function. Used for test fixtures.
  static WindowAnalysis custom(Algorithm tag, Pattern pattern,
                               WindowFunction function);

  Algorithm algorithm() const noexcept { return algorithm_; }
  const Pattern& pattern() const noexcept { return pattern_; }
  std::size_t length() const noexcept { return pattern_.length(); }

  /// `window` must have length m.
  WindowOutcome evaluate(std::span<const Symbol> window) const;
  int cost(std::span<const Symbol> window) const {
    return evaluate(window).cost;
  }
  int shift(std::span<const Symbol> window) const {
    return evaluate(window).shift;
  }

  /// The set I(w) of read lengths i < m after which the backward scanner is
  /// in a shift-relevant state; shift(w) = min{m - i}. Empty for Horspool.
  std::vector<int> shift_candidates(std::span<const Symbol> window) const;

  /// Horspool's ashift[a]. Only valid for Horspool analyses.
  int horspool_shift(Symbol last) const;

 private:
  friend WindowAnalysis horspool_analysis(const Pattern& pattern);
  friend WindowAnalysis bdm_analysis(const Pattern& pattern);
  friend WindowAnalysis bom_analysis(const Pattern& pattern);

  struct Scanner {
    DeterministicAutomaton automaton;
    /// States whose read length enters I(w).
    std::vector<char> collects;
  };

  WindowAnalysis(Algorithm algorithm, Pattern pattern)
      : algorithm_(algorithm), pattern_(std::move(pattern)) {}

  WindowOutcome evaluate_horspool(std::span<const Symbol> window) const;
  WindowOutcome evaluate_backward(std::span<const Symbol> window) const;

  Algorithm algorithm_;
  Pattern pattern_;
  std::vector<int> ashift_;
  std::shared_ptr<const Scanner> scanner_;
  WindowFunction custom_;
};

/// Right-to-left comparison; shift determined by the last window symbol.
WindowAnalysis horspool_analysis(const Pattern& pattern);
/// Backward scan with the suffix automaton of rev(p).
WindowAnalysis bdm_analysis(const Pattern& pattern);
/// Backward scan with the factor oracle of rev(p). Every live oracle state
/// counts as a potential window start, so a FAIL on the i-th read symbol
/// gives shift m - i + 1 and a full match gives shift 1.
WindowAnalysis bom_analysis(const Pattern& pattern);
WindowAnalysis make_analysis(Algorithm algorithm, const Pattern& pattern);

struct MatchResult {
  std::uint64_t occurrences = 0;
  std::uint64_t cost = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Generic window loop: the first window ends at t = m - 1; each window adds
/// cost(w) and advances t by shift(w).
MatchResult run_matcher(const WindowAnalysis& analysis,
                        std::span<const Symbol> text);

/// Direct transcription of Horspool's search loop with access counting.
MatchResult horspool_reference(const Pattern& pattern,
                               std::span<const Symbol> text);
/// Textbook BDM search loop driven by the suffix automaton.
MatchResult bdm_reference(const Pattern& pattern, std::span<const Symbol> text);
/// Textbook BOM search loop driven by the factor oracle.
MatchResult bom_reference(const Pattern& pattern, std::span<const Symbol> text);
MatchResult reference_match(Algorithm algorithm, const Pattern& pattern,
                            std::span<const Symbol> text);

/// KMP reads every text character exactly once.
Distribution kmp_distribution(std::int64_t n);

}  // namespace patdist

#endif  // PATDIST_MATCHERS_HPP
