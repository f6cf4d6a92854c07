// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_TEXTMODEL_HPP
#define PATDIST_TEXTMODEL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patdist/alphabet.hpp"

namespace patdist {

inline constexpr double kStochasticTolerance = 1e-9;

/// phi(from, symbol, to) = prob.
struct ModelTransition {
  std::int32_t from = 0;
  Symbol symbol = 0;
  std::int32_t to = 0;
  double prob = 0.0;
};

/// Unvalidated description of a finite-memory text model.
struct TextModelSpec {
  Alphabet alphabet;
  std::vector<std::string> contexts;
  std::int32_t start = 0;
  std::vector<ModelTransition> transitions;
};

struct ContextResidual {
  std::string context;
  /// 1 - outgoing mass.
  double residual = 0.0;
};

struct ModelDiagnostics {
  std::vector<ContextResidual> residuals;
  std::vector<std::string> unreachable;
  std::vector<std::string> out_of_range;
  /// Contexts with no outgoing mass at all.
  std::vector<std::string> dead;
  std::vector<std::string> structural;

  /// Unreachable contexts alone are a warning, everything else an error.
  bool ok() const {
    return residuals.empty() && out_of_range.empty() && dead.empty() &&
           structural.empty();
  }
  std::string describe() const;
};

ModelDiagnostics validate(const TextModelSpec& spec);

/// Validated finite-memory text model (C, c0, Σ, φ). Contexts unreachable
/// from the start context are pruned and reported in warnings().
class TextModel {
 public:
  /// Throws Error(kSumNotOne) on normalisation failures and
  /// Error(kInvalidArgument) on other structural problems.
  explicit TextModel(TextModelSpec spec, std::string label = "custom");

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t context_count() const noexcept { return names_.size(); }
  const std::string& context_name(std::int32_t c) const { return names_.at(c); }
  std::int32_t start() const noexcept { return start_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Transitions leaving context c, sorted by (symbol, to).
  std::span<const ModelTransition> outgoing(std::int32_t c) const;

  /// True if every (c, σ) has at most one successor context with positive
  /// probability.
  bool deterministic_context() const noexcept { return deterministic_; }

  /// For deterministic-context models: unique successor of (c, σ) and its
  /// probability, or (-1, 0) when φ(c, σ, ·) vanishes.
  std::pair<std::int32_t, double> step(std::int32_t c, Symbol a) const;

  TextModelSpec spec() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::int32_t start_ = 0;
  std::string label_;
  std::vector<ModelTransition> transitions_;
  std::vector<std::size_t> offsets_;
  bool deterministic_ = false;
  std::vector<std::int32_t> step_target_;
  std::vector<double> step_prob_;
  std::vector<std::string> warnings_;
};

/// Single empty context emitting symbol a with probability probs[a].
TextModel iid_model(const Alphabet& alphabet, std::span<const double> probs);
TextModel uniform_model(const Alphabet& alphabet);

/// Order-r Markov model. `next_symbol` maps every context string of length
/// <= r to the distribution of the following symbol; shorter strings are the
/// start-up contexts.
TextModel markov_model(
    const Alphabet& alphabet, int order,
    const std::map<std::string, std::vector<double>>& next_symbol);

/// P(S_0..S_{n-1} = s, C_n = c) for a fixed prefix s, indexed by context.
class ForwardState {
 public:
  explicit ForwardState(const TextModel& model);

  void advance(Symbol a);
  double mass() const;
  std::span<const double> by_context() const noexcept { return mass_; }

 private:
  const TextModel* model_;
  std::vector<double> mass_;
  std::vector<double> scratch_;
};

double string_probability(const TextModel& model, std::span<const Symbol> s);

/// JSON model files: {"alphabet", "contexts", "start", "transitions":
/// [{"from","symbol","to","prob"}]}.
TextModel load_model_json(std::string_view json_text, std::string label = "json");
TextModel load_model_file(const std::string& path);
/// {"alphabet", "order", "distributions": {"<context>": [p...]}}.
TextModel load_markov_json(std::string_view json_text, std::string label = "markov");
TextModel load_markov_file(const std::string& path);
/// "uniform" or "A=0.3,C=0.2,G=0.2,T=0.3".
TextModel parse_iid_spec(const Alphabet& alphabet, std::string_view spec);

}  // namespace patdist

#endif  // PATDIST_TEXTMODEL_HPP
