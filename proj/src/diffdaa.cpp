// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/diffdaa.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "patdist/error.hpp"
#include "patdist/paa.hpp"

namespace patdist {

Daa build_difference_daa(const Daa& a, const Daa& b, std::size_t state_cap) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "difference DAA needs both automata over the same alphabet");
  }
  for (const Daa* d : {&a, &b}) {
    if (d->domain() != ValueDomain::kNatural) {
      throw Error(ErrorCode::kInvalidArgument,
                  "difference DAA components must have natural-number values");
    }
    for (auto e : d->emissions()) {
      if (e < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "difference DAA components must have nonnegative emissions");
      }
    }
  }
  const auto sigma = a.alphabet_size();
  const auto nb = static_cast<std::uint64_t>(b.state_count());
  std::vector<std::pair<Daa::State, Daa::State>> labels;
  std::unordered_map<std::uint64_t, Daa::State> index;
  std::vector<Daa::State> transitions;
  std::vector<std::int64_t> emissions;

  auto intern = [&](Daa::State p, Daa::State q) {
    const auto key = static_cast<std::uint64_t>(p) * nb + static_cast<std::uint64_t>(q);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (labels.size() >= state_cap) {
      throw Error(ErrorCode::kStateCapExceeded,
                  "difference DAA exceeds the state cap of " + std::to_string(state_cap));
    }
    const auto s = static_cast<Daa::State>(labels.size());
    labels.emplace_back(p, q);
    index.emplace(key, s);
    return s;
  };
  intern(a.start(), b.start());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [p, q] = labels[i];
    emissions.push_back(a.emission(p) - b.emission(q));
    for (std::size_t c = 0; c < sigma; ++c) {
      const auto sym = static_cast<Symbol>(c);
      transitions.push_back(intern(a.next(p, sym), b.next(q, sym)));
    }
  }
  return Daa(a.alphabet(), std::move(transitions), std::move(emissions), 0,
             ValueDomain::kInteger);
}

DifferenceResult difference_distribution(const WindowAnalysis& a,
                                         const WindowAnalysis& b,
                                         const TextModel& model, std::int64_t n,
                                         std::size_t state_cap) {
  if (!(a.pattern().alphabet() == b.pattern().alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch, "analyses use different alphabets");
  }
  const auto pa = a.pattern().symbols();
  const auto pb = b.pattern().symbols();
  if (!std::equal(pa.begin(), pa.end(), pb.begin(), pb.end())) {
    throw Error(ErrorCode::kInvalidArgument, "analyses must share the pattern");
  }
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative text length");
  DifferenceResult r;
  const auto raw_a = build_cost_daa(a, state_cap);
  const auto raw_b = build_cost_daa(b, state_cap);
  const auto min_a = minimize_daa(raw_a);
  const auto min_b = minimize_daa(raw_b);
  const auto product = build_difference_daa(min_a, min_b, state_cap);
  const auto min_product = minimize_daa(product);
  const auto paa = build_paa(min_product, model);

  r.states_a = raw_a.state_count();
  r.states_b = raw_b.state_count();
  r.minimized_a = min_a.state_count();
  r.minimized_b = min_b.state_count();
  r.product_states = product.state_count();
  r.minimized_product = min_product.state_count();
  r.paa_states = paa.state_count();

  r.distribution = cost_distribution(paa, n);
  r.summary = r.distribution.sign_summary();
  auto& meta = r.distribution.metadata();
  meta.algorithm = std::string(to_string(a.algorithm()));
  meta.algorithm_b = std::string(to_string(b.algorithm()));
  meta.pattern = a.pattern().to_string();
  meta.alphabet = model.alphabet().symbols();
  meta.model = model.label();
  meta.n = n;
  meta.difference = r.summary;
  return r;
}

}  // namespace patdist
