// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/matchers.hpp"

#include <algorithm>
#include <cctype>

#include "patdist/error.hpp"

namespace patdist {

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::kHorspool: return "horspool";
    case Algorithm::kBdm: return "bdm";
    case Algorithm::kBom: return "bom";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string lower;
  for (char c : name) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "horspool") return Algorithm::kHorspool;
  if (lower == "bdm" || lower == "bndm" || lower == "b(n)dm") {
    return Algorithm::kBdm;
  }
  if (lower == "bom") return Algorithm::kBom;
  return std::nullopt;
}

namespace {

void check_window(const WindowAnalysis& a, std::span<const Symbol> window) {
  if (window.size() != a.length()) {
    throw Error(ErrorCode::kInvalidArgument,
                "window length differs from pattern length");
  }
}

}  // namespace

WindowAnalysis WindowAnalysis::custom(Algorithm tag, Pattern pattern,
                                      WindowFunction function) {
  if (!function) {
    throw Error(ErrorCode::kInvalidArgument, "custom analysis without function");
  }
  WindowAnalysis a(tag, std::move(pattern));
  a.custom_ = std::move(function);
  return a;
}

WindowOutcome WindowAnalysis::evaluate(std::span<const Symbol> window) const {
  check_window(*this, window);
  if (custom_) return custom_(window);
  if (scanner_) return evaluate_backward(window);
  return evaluate_horspool(window);
}

WindowOutcome WindowAnalysis::evaluate_horspool(
    std::span<const Symbol> window) const {
  const auto m = static_cast<int>(length());
  int cost = m;
  for (int i = 1; i <= m; ++i) {
    if (pattern_[m - i] != window[m - i]) {
      cost = i;
      break;
    }
  }
  return {cost, ashift_[window[m - 1]]};
}

WindowOutcome WindowAnalysis::evaluate_backward(
    std::span<const Symbol> window) const {
  const auto m = static_cast<int>(length());
  const auto& dfa = scanner_->automaton;
  std::int32_t state = dfa.initial();
  int shift = m;
  for (int i = 1; i <= m; ++i) {
    state = dfa.next(state, window[m - i]);
    if (state == DeterministicAutomaton::kFail) return {i, shift};
    if (i < m && scanner_->collects[state]) shift = m - i;
  }
  return {m, shift};
}

std::vector<int> WindowAnalysis::shift_candidates(
    std::span<const Symbol> window) const {
  check_window(*this, window);
  std::vector<int> out;
  if (!scanner_) return out;
  const auto m = static_cast<int>(length());
  const auto& dfa = scanner_->automaton;
  std::int32_t state = dfa.initial();
  if (scanner_->collects[state]) out.push_back(0);
  for (int i = 1; i < m; ++i) {
    state = dfa.next(state, window[m - i]);
    if (state == DeterministicAutomaton::kFail) break;
    if (scanner_->collects[state]) out.push_back(i);
  }
  return out;
}

int WindowAnalysis::horspool_shift(Symbol last) const {
  if (ashift_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "not a Horspool analysis");
  }
  return ashift_.at(last);
}

WindowAnalysis horspool_analysis(const Pattern& pattern) {
  WindowAnalysis a(Algorithm::kHorspool, pattern);
  const auto m = static_cast<int>(pattern.length());
  // rightpos(a) over positions 0..m-2, -1 if absent.
  std::vector<int> rightpos(pattern.alphabet().size(), -1);
  for (int i = 0; i + 1 < m; ++i) rightpos[pattern[i]] = i;
  a.ashift_.resize(rightpos.size());
  for (std::size_t c = 0; c < rightpos.size(); ++c) {
    a.ashift_[c] = (m - 1) - rightpos[c];
  }
  return a;
}

WindowAnalysis bdm_analysis(const Pattern& pattern) {
  WindowAnalysis a(Algorithm::kBdm, pattern);
  auto sa = build_suffix_automaton(pattern);
  WindowAnalysis::Scanner scanner{std::move(sa.automaton), {}};
  scanner.collects.resize(scanner.automaton.state_count());
  for (std::size_t s = 0; s < scanner.collects.size(); ++s) {
    scanner.collects[s] =
        scanner.automaton.is_accepting(static_cast<std::int32_t>(s));
  }
  a.scanner_ = std::make_shared<const WindowAnalysis::Scanner>(std::move(scanner));
  return a;
}

WindowAnalysis bom_analysis(const Pattern& pattern) {
  WindowAnalysis a(Algorithm::kBom, pattern);
  auto fo = build_factor_oracle(pattern);
  WindowAnalysis::Scanner scanner{std::move(fo.automaton), {}};
  scanner.collects.assign(scanner.automaton.state_count(), 1);
  a.scanner_ = std::make_shared<const WindowAnalysis::Scanner>(std::move(scanner));
  return a;
}

WindowAnalysis make_analysis(Algorithm algorithm, const Pattern& pattern) {
  switch (algorithm) {
    case Algorithm::kHorspool: return horspool_analysis(pattern);
    case Algorithm::kBdm: return bdm_analysis(pattern);
    case Algorithm::kBom: return bom_analysis(pattern);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

MatchResult run_matcher(const WindowAnalysis& analysis,
                        std::span<const Symbol> text) {
  MatchResult r;
  const auto m = analysis.length();
  const auto p = analysis.pattern().symbols();
  for (std::size_t t = m - 1; t < text.size();) {
    auto window = text.subspan(t + 1 - m, m);
    const auto out = analysis.evaluate(window);
    r.cost += static_cast<std::uint64_t>(out.cost);
    if (std::equal(window.begin(), window.end(), p.begin())) ++r.occurrences;
    t += static_cast<std::size_t>(out.shift);
  }
  return r;
}

MatchResult horspool_reference(const Pattern& pattern,
                               std::span<const Symbol> s) {
  const auto m = pattern.length();
  std::vector<std::size_t> ashift(pattern.alphabet().size(), m);
  for (std::size_t i = 0; i + 1 < m; ++i) ashift[pattern[i]] = m - 1 - i;

  MatchResult r;
  std::size_t t = m - 1;
  while (t < s.size()) {
    std::size_t i = 0;
    while (i < m) {
      ++r.cost;
      if (s[t - i] != pattern[(m - 1) - i]) break;
      ++i;
    }
    if (i == m) ++r.occurrences;
    t += ashift[s[t]];
  }
  return r;
}

namespace {

// `last` tracks the rightmost live position that may start a match.
MatchResult backward_search(const DeterministicAutomaton& dfa,
                            bool every_state_counts, std::size_t m,
                            std::span<const Symbol> text) {
  MatchResult r;
  std::size_t pos = 0;
  while (pos + m <= text.size()) {
    std::int32_t state = dfa.initial();
    std::size_t j = m;
    std::size_t last = m;
    while (j > 0) {
      ++r.cost;
      state = dfa.next(state, text[pos + j - 1]);
      if (state == DeterministicAutomaton::kFail) break;
      --j;
      if (every_state_counts || dfa.is_accepting(state)) {
        if (j > 0) {
          last = j;
        } else {
          ++r.occurrences;
        }
      }
    }
    pos += last;
  }
  return r;
}

}  // namespace

MatchResult bdm_reference(const Pattern& pattern, std::span<const Symbol> text) {
  const auto sa = build_suffix_automaton(pattern);
  return backward_search(sa.automaton, false, pattern.length(), text);
}

MatchResult bom_reference(const Pattern& pattern, std::span<const Symbol> text) {
  // Every live oracle state counts; a full read is necessarily rev(p).
  const auto fo = build_factor_oracle(pattern);
  return backward_search(fo.automaton, true, pattern.length(), text);
}

MatchResult reference_match(Algorithm algorithm, const Pattern& pattern,
                            std::span<const Symbol> text) {
  switch (algorithm) {
    case Algorithm::kHorspool: return horspool_reference(pattern, text);
    case Algorithm::kBdm: return bdm_reference(pattern, text);
    case Algorithm::kBom: return bom_reference(pattern, text);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

Distribution kmp_distribution(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative text length");
  auto d = Distribution::dirac(n);
  d.metadata().algorithm = "kmp";
  d.metadata().n = n;
  return d;
}

}  // namespace patdist
