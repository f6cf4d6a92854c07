// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_DISTRIBUTION_HPP
#define PATDIST_DISTRIBUTION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patdist {

inline constexpr double kMassTolerance = 1e-9;

struct DifferenceSummary {
  double less = 0.0;
  double equal = 0.0;
  double greater = 0.0;
};

struct DistributionMetadata {
  std::string algorithm;
  /// Second algorithm of a cost difference; empty for plain cost laws.
  std::string algorithm_b;
  std::string pattern;
  std::string alphabet;
  std::string model;
  std::int64_t n = 0;
  std::optional<DifferenceSummary> difference;
};

/// Sparse probability mass function over integers, sorted by value.
/// Values with exactly zero mass are not stored.
class Distribution {
 public:
  using Entry = std::pair<std::int64_t, double>;

  Distribution() = default;
  /// Sorts and merges duplicate values. Negative masses are rejected.
  explicit Distribution(std::vector<Entry> entries);

  static Distribution dirac(std::int64_t value);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double probability(std::int64_t value) const;
  double total_mass() const;
  std::int64_t min_value() const;
  std::int64_t max_value() const;

  DifferenceSummary sign_summary() const;

  DistributionMetadata& metadata() noexcept { return metadata_; }
  const DistributionMetadata& metadata() const noexcept { return metadata_; }

 private:
  std::vector<Entry> entries_;
  DistributionMetadata metadata_;
};

struct DistributionStats {
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::vector<std::pair<double, std::int64_t>> quantiles;
};

/// Smallest value whose cumulative mass reaches q.
std::int64_t quantile(const Distribution& d, double q);

/// Exact moments plus the 5/25/50/75/95 % quantiles.
DistributionStats distribution_stats(const Distribution& d);

/// `value,probability` rows, ascending, 17 significant digits. Throws
/// Error(kInternal) when the mass is not 1 within kMassTolerance.
void write_csv(std::ostream& out, const Distribution& d);
void write_json(std::ostream& out, const Distribution& d);
Distribution read_csv(std::istream& in);

}  // namespace patdist

#endif  // PATDIST_DISTRIBUTION_HPP
