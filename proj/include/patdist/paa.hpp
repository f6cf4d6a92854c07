// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_PAA_HPP
#define PATDIST_PAA_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "patdist/daa.hpp"
#include "patdist/distribution.hpp"
#include "patdist/matchers.hpp"
#include "patdist/textmodel.hpp"

namespace patdist {

struct PaaOptions {
  /// Use the general product even for deterministic-context models.
  bool force_general = false;
};

/// Probabilistic arithmetic automaton over reachable (DAA state, context)
/// pairs. Emissions are deterministic and the operation is addition.
class Paa {
 public:
  struct Edge {
    std::int32_t target;
    double prob;
  };

  std::size_t state_count() const noexcept { return emissions_.size(); }
  std::int32_t start() const noexcept { return 0; }
  std::int64_t emission(std::int32_t q) const { return emissions_.at(q); }
  std::span<const Edge> row(std::int32_t q) const {
    const auto i = static_cast<std::size_t>(q);
    return std::span<const Edge>(edges_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  /// Labels of state q: (DAA state, context).
  std::pair<std::int32_t, std::int32_t> label(std::int32_t q) const {
    return labels_.at(q);
  }
  ValueDomain domain() const noexcept { return domain_; }
  bool used_reduced_product() const noexcept { return reduced_; }

 private:
  friend Paa build_paa(const Daa&, const TextModel&, PaaOptions);

  std::vector<std::int64_t> emissions_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::int32_t, std::int32_t>> labels_;
  ValueDomain domain_ = ValueDomain::kNatural;
  bool reduced_ = false;
};

/// T((q,c),(q',c')) = sum of φ(c,σ,c') over σ with δ(q,σ) = q'.
/// Throws Error(kAlphabetMismatch) if the alphabets differ.
Paa build_paa(const Daa& daa, const TextModel& model, PaaOptions options = {});

/// Law of the value after n steps, by forward push of f_t(q, v). Mass
/// conservation is checked at every step.
Distribution cost_distribution(const Paa& paa, std::int64_t n);
/// Laws for every t = 0..n from a single run.
std::vector<Distribution> cost_distributions_upto(const Paa& paa, std::int64_t n);

struct EmpiricalDistribution {
  Distribution distribution;
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Samples texts by walking the model, deterministic for a given seed.
EmpiricalDistribution monte_carlo_distribution(const WindowAnalysis& analysis,
                                               const TextModel& model,
                                               std::int64_t n,
                                               std::uint64_t samples,
                                               std::uint64_t seed);

inline constexpr std::int64_t kCertifyMaxLength = 20;
inline constexpr std::size_t kCertifyMaxStates = 200;

struct Certification {
  double max_abs_deviation = 0.0;
  std::size_t product_states = 0;
};

/// Recomputes the law with exact rational arithmetic (the model's doubles
/// are converted exactly) and compares it with cost_distribution. Limited
/// to n <= 20 and at most 200 product states.
Certification certify_distribution(const Daa& daa, const TextModel& model,
                                   std::int64_t n);

}  // namespace patdist

#endif  // PATDIST_PAA_HPP
