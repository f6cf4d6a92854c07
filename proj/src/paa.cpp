// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/paa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "patdist/error.hpp"

namespace patdist {

Paa build_paa(const Daa& daa, const TextModel& model, PaaOptions options) {
  if (!(daa.alphabet() == model.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "DAA alphabet \"" + daa.alphabet().symbols() +
                    "\" differs from model alphabet \"" +
                    model.alphabet().symbols() + "\"");
  }
  const auto sigma = daa.alphabet_size();
  const auto contexts = model.context_count();
  const bool reduced = model.deterministic_context() && !options.force_general;

  Paa paa;
  paa.domain_ = daa.domain();
  paa.reduced_ = reduced;
  std::unordered_map<std::uint64_t, std::int32_t> index;
  auto intern = [&](std::int32_t q, std::int32_t c) {
    const auto key = static_cast<std::uint64_t>(q) * contexts + static_cast<std::uint64_t>(c);
    auto [it, inserted] = index.emplace(key, static_cast<std::int32_t>(paa.labels_.size()));
    if (inserted) {
      paa.labels_.emplace_back(q, c);
      paa.emissions_.push_back(daa.emission(q));
    }
    return it->second;
  };
  intern(daa.start(), model.start());

  std::map<std::int32_t, double> row;
  paa.offsets_.push_back(0);
  for (std::size_t i = 0; i < paa.labels_.size(); ++i) {
    const auto [q, c] = paa.labels_[i];
    row.clear();
    if (reduced) {
      for (std::size_t a = 0; a < sigma; ++a) {
        const auto [next_c, p] = model.step(c, static_cast<Symbol>(a));
        if (next_c < 0) continue;
        row[intern(daa.next(q, static_cast<Symbol>(a)), next_c)] += p;
      }
    } else {
      for (const auto& t : model.outgoing(c)) {
        row[intern(daa.next(q, t.symbol), t.to)] += t.prob;
      }
    }
    for (const auto& [target, p] : row) paa.edges_.push_back({target, p});
    paa.offsets_.push_back(paa.edges_.size());
  }
  return paa;
}

namespace {

// f_t(q, ·) as a dense slice [lo, lo + p.size()).
struct Slice {
  std::int64_t lo = 0;
  std::vector<double> p;
};

class PushEngine {
 public:
  explicit PushEngine(const Paa& paa) : paa_(paa), cur_(paa.state_count()), next_(paa.state_count()) {
    cur_[paa.start()].lo = 0;
    cur_[paa.start()].p = {1.0};
  }

  void step() {
    const auto n = paa_.state_count();
    std::vector<std::int64_t> lo(n, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> hi(n, std::numeric_limits<std::int64_t>::min());
    for (std::size_t q = 0; q < n; ++q) {
      const auto& s = cur_[q];
      if (s.p.empty()) continue;
      for (const auto& e : paa_.row(static_cast<std::int32_t>(q))) {
        const auto em = paa_.emission(e.target);
        lo[e.target] = std::min(lo[e.target], s.lo + em);
        hi[e.target] = std::max(hi[e.target], s.lo + static_cast<std::int64_t>(s.p.size()) - 1 + em);
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      next_[q].p.clear();
      if (lo[q] <= hi[q]) {
        next_[q].lo = lo[q];
        next_[q].p.assign(static_cast<std::size_t>(hi[q] - lo[q] + 1), 0.0);
      }
    }
    double total = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      const auto& s = cur_[q];
      if (s.p.empty()) continue;
      for (const auto& e : paa_.row(static_cast<std::int32_t>(q))) {
        auto& t = next_[e.target];
        const auto offset = static_cast<std::size_t>(s.lo + paa_.emission(e.target) - t.lo);
        double* dst = t.p.data() + offset;
        for (std::size_t k = 0; k < s.p.size(); ++k) {
          const double v = s.p[k] * e.prob;
          dst[k] += v;
          total += v;
        }
      }
    }
    cur_.swap(next_);
    if (std::abs(total - 1.0) > kMassTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "mass not conserved during push: " << total;
      throw Error(ErrorCode::kInternal, msg.str());
    }
  }

  Distribution marginal() const {
    std::map<std::int64_t, double> acc;
    for (const auto& s : cur_) {
      for (std::size_t k = 0; k < s.p.size(); ++k) {
        if (s.p[k] != 0.0) acc[s.lo + static_cast<std::int64_t>(k)] += s.p[k];
      }
    }
    return Distribution(std::vector<Distribution::Entry>(acc.begin(), acc.end()));
  }

 private:
  const Paa& paa_;
  std::vector<Slice> cur_;
  std::vector<Slice> next_;
};

}  // namespace

Distribution cost_distribution(const Paa& paa, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative text length");
  PushEngine engine(paa);
  for (std::int64_t t = 0; t < n; ++t) engine.step();
  auto d = engine.marginal();
  d.metadata().n = n;
  return d;
}

std::vector<Distribution> cost_distributions_upto(const Paa& paa, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative text length");
  std::vector<Distribution> out;
  PushEngine engine(paa);
  out.push_back(engine.marginal());
  for (std::int64_t t = 0; t < n; ++t) {
    engine.step();
    out.push_back(engine.marginal());
    out.back().metadata().n = t + 1;
  }
  return out;
}

EmpiricalDistribution monte_carlo_distribution(const WindowAnalysis& analysis,
                                               const TextModel& model,
                                               std::int64_t n,
                                               std::uint64_t samples,
                                               std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative text length");
  if (!(analysis.pattern().alphabet() == model.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch, "pattern and model alphabets differ");
  }
  std::mt19937_64 rng(seed);
  std::map<std::int64_t, std::uint64_t> counts;
  Word text(static_cast<std::size_t>(n));
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::int32_t c = model.start();
    for (auto& sym : text) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto out = model.outgoing(c);
      double cumulative = 0.0;
      const ModelTransition* chosen = &out.back();
      for (const auto& t : out) {
        cumulative += t.prob;
        if (u < cumulative) {
          chosen = &t;
          break;
        }
      }
      sym = chosen->symbol;
      c = chosen->to;
    }
    const auto cost = static_cast<std::int64_t>(run_matcher(analysis, text).cost);
    ++counts[cost];
    sum += static_cast<double>(cost);
    sum_sq += static_cast<double>(cost) * static_cast<double>(cost);
  }
  EmpiricalDistribution result;
  result.samples = samples;
  const double count = static_cast<double>(samples);
  result.mean = sum / count;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - count * result.mean * result.mean) / (count - 1.0));
    result.standard_error = std::sqrt(var / count);
  }
  std::vector<Distribution::Entry> entries;
  for (const auto& [v, k] : counts) {
    entries.emplace_back(v, static_cast<double>(k) / count);
  }
  result.distribution = Distribution(std::move(entries));
  auto& meta = result.distribution.metadata();
  meta.algorithm = std::string(to_string(analysis.algorithm()));
  meta.pattern = analysis.pattern().to_string();
  meta.alphabet = model.alphabet().symbols();
  meta.model = model.label();
  meta.n = n;
  return result;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational exact(double x) {
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{BigInt(scaled)};
  if (exponent > 0) {
    r *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    r /= Rational(BigInt(1) << -exponent);
  }
  return r;
}

}  // namespace

Certification certify_distribution(const Daa& daa, const TextModel& model,
                                   std::int64_t n) {
  if (n < 0 || n > kCertifyMaxLength) {
    throw Error(ErrorCode::kInvalidArgument, "exact certification needs 0 <= n <= 20");
  }
  const auto paa = build_paa(daa, model);
  if (paa.state_count() > kCertifyMaxStates) {
    throw Error(ErrorCode::kInvalidArgument,
                "exact certification limited to 200 product states");
  }
  const auto approx = cost_distribution(paa, n);

  // Exact forward pass over (DAA state, context, value) driven directly by
  // δ and φ, independent of the PAA's aggregated rows.
  using Key = std::tuple<std::int32_t, std::int32_t, std::int64_t>;
  std::map<Key, Rational> f{{{daa.start(), model.start(), 0}, Rational(1)}};
  for (std::int64_t t = 0; t < n; ++t) {
    std::map<Key, Rational> g;
    for (const auto& [key, mass] : f) {
      const auto [q, c, v] = key;
      for (const auto& tr : model.outgoing(c)) {
        const auto q2 = daa.next(q, tr.symbol);
        g[{q2, tr.to, v + daa.emission(q2)}] += mass * exact(tr.prob);
      }
    }
    f.swap(g);
  }
  std::map<std::int64_t, Rational> law;
  for (const auto& [key, mass] : f) law[std::get<2>(key)] += mass;

  Certification cert;
  cert.product_states = paa.state_count();
  for (const auto& [v, mass] : law) {
    const double dev = std::abs(static_cast<double>(mass) - approx.probability(v));
    cert.max_abs_deviation = std::max(cert.max_abs_deviation, dev);
  }
  for (const auto& [v, p] : approx.entries()) {
    if (!law.count(v)) cert.max_abs_deviation = std::max(cert.max_abs_deviation, p);
  }
  return cert;
}

}  // namespace patdist
