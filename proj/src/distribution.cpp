// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "patdist/error.hpp"

namespace patdist {

Distribution::Distribution(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [value, p] : entries) {
    if (!(p >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative or NaN probability for value " +
                      std::to_string(value));
    }
    if (p == 0.0) continue;
    if (!entries_.empty() && entries_.back().first == value) {
      entries_.back().second += p;
    } else {
      entries_.emplace_back(value, p);
    }
  }
}

Distribution Distribution::dirac(std::int64_t value) {
  return Distribution({{value, 1.0}});
}

double Distribution::probability(std::int64_t value) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), value,
      [](const Entry& e, std::int64_t v) { return e.first < v; });
  return (it != entries_.end() && it->first == value) ? it->second : 0.0;
}

double Distribution::total_mass() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.second;
  return sum;
}

std::int64_t Distribution::min_value() const {
  if (entries_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty pmf");
  return entries_.front().first;
}

std::int64_t Distribution::max_value() const {
  if (entries_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty pmf");
  return entries_.back().first;
}

DifferenceSummary Distribution::sign_summary() const {
  DifferenceSummary s;
  for (const auto& [v, p] : entries_) {
    if (v < 0) s.less += p;
    else if (v == 0) s.equal += p;
    else s.greater += p;
  }
  return s;
}

std::int64_t quantile(const Distribution& d, double q) {
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, "empty pmf");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantile level outside [0,1]");
  }
  // Tolerate rounding in the cumulative sum so q = 1 hits the last value.
  const double target = q * d.total_mass() - 1e-12;
  double cumulative = 0.0;
  for (const auto& [v, p] : d.entries()) {
    cumulative += p;
    if (cumulative >= target) return v;
  }
  return d.max_value();
}

DistributionStats distribution_stats(const Distribution& d) {
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, "empty pmf");
  DistributionStats s;
  const double mass = d.total_mass();
  for (const auto& [v, p] : d.entries()) s.mean += static_cast<double>(v) * p;
  s.mean /= mass;
  for (const auto& [v, p] : d.entries()) {
    const double dev = static_cast<double>(v) - s.mean;
    s.variance += dev * dev * p;
  }
  s.variance /= mass;
  s.min = d.min_value();
  s.max = d.max_value();
  for (double q : {0.05, 0.25, 0.5, 0.75, 0.95}) {
    s.quantiles.emplace_back(q, quantile(d, q));
  }
  return s;
}

namespace {

void check_mass(const Distribution& d) {
  const double mass = d.total_mass();
  if (std::abs(mass - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "refusing to write pmf with total mass " << mass;
    throw Error(ErrorCode::kInternal, msg.str());
  }
}

}  // namespace

void write_csv(std::ostream& out, const Distribution& d) {
  check_mass(d);
  out << "value,probability\n";
  char buf[64];
  for (const auto& [v, p] : d.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << v << ',' << buf << '\n';
  }
}

void write_json(std::ostream& out, const Distribution& d) {
  check_mass(d);
  const auto stats = distribution_stats(d);
  const auto& meta = d.metadata();
  nlohmann::ordered_json j;
  auto& m = j["metadata"];
  m["algorithm"] = meta.algorithm;
  if (!meta.algorithm_b.empty()) m["algorithm_b"] = meta.algorithm_b;
  m["pattern"] = meta.pattern;
  m["alphabet"] = meta.alphabet;
  m["model"] = meta.model;
  m["n"] = meta.n;
  m["mean"] = stats.mean;
  m["variance"] = stats.variance;
  if (meta.difference) {
    m["p_less"] = meta.difference->less;
    m["p_equal"] = meta.difference->equal;
    m["p_greater"] = meta.difference->greater;
  }
  auto& pmf = j["pmf"];
  pmf = nlohmann::ordered_json::array();
  for (const auto& [v, p] : d.entries()) {
    pmf.push_back({{"value", v}, {"probability", p}});
  }
  out << j.dump(2) << '\n';
}

Distribution read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("value,probability", 0) != 0) {
    throw Error(ErrorCode::kParse, "missing 'value,probability' header");
  }
  std::vector<Distribution::Entry> entries;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      auto v = std::stoll(line.substr(0, comma), &used);
      auto p = std::stod(line.substr(comma + 1));
      entries.emplace_back(v, p);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse,
                  "malformed pmf row at line " + std::to_string(lineno));
    }
  }
  return Distribution(std::move(entries));
}

}  // namespace patdist
