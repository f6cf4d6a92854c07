// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "patdist/diffdaa.hpp"
#include "patdist/error.hpp"
#include "patdist/paa.hpp"

namespace patdist {

CostResult compute_cost_distribution(const WindowAnalysis& analysis,
                                     const TextModel& model, std::int64_t n,
                                     std::size_t state_cap) {
  CostResult r;
  const auto raw = build_cost_daa(analysis, state_cap);
  const auto minimized = minimize_daa(raw);
  const auto paa = build_paa(minimized, model);
  r.raw_states = raw.state_count();
  r.minimized_states = minimized.state_count();
  r.paa_states = paa.state_count();
  r.distribution = cost_distribution(paa, n);
  auto& meta = r.distribution.metadata();
  meta.algorithm = std::string(to_string(analysis.algorithm()));
  meta.pattern = analysis.pattern().to_string();
  meta.alphabet = model.alphabet().symbols();
  meta.model = model.label();
  meta.n = n;
  return r;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

std::uint64_t checked_power(std::size_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > limit) return limit + 1;
  }
  return v;
}

Word word_from_index(std::uint64_t index, std::size_t sigma, std::size_t length) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % sigma);
    index /= sigma;
  }
  return w;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(const Alphabet& alphabet, std::size_t m) {
  const auto count = checked_power(alphabet.size(), m, 100'000'000);
  if (m == 0 || count > 100'000'000) {
    throw Error(ErrorCode::kInvalidArgument, "pattern enumeration too large");
  }
  std::vector<Pattern> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(alphabet, word_from_index(i, alphabet.size(), m));
  }
  return out;
}

std::vector<SweepRow> sweep_automaton_sizes(const Alphabet& alphabet, std::size_t m,
                                            std::span<const Algorithm> algorithms,
                                            std::size_t state_cap, unsigned threads) {
  const auto patterns = enumerate_patterns(alphabet, m);
  std::vector<SweepRow> rows;
  for (auto algorithm : algorithms) {
    SweepRow row;
    row.algorithm = algorithm;
    row.full_space = full_state_space_size(alphabet.size(), m);
    row.sizes.assign(patterns.size(), 0);
    std::vector<std::string> errors(patterns.size());
    parallel_for(patterns.size(), threads, [&](std::size_t i) {
      try {
        const auto raw = build_cost_daa(make_analysis(algorithm, patterns[i]), state_cap);
        row.sizes[i] = minimize_daa(raw).state_count();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kStateCapExceeded) throw;
        errors[i] = e.what();
      }
    });
    std::size_t done = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (!errors[i].empty()) {
        if (row.complete) row.error = errors[i];
        row.complete = false;
        continue;
      }
      const auto s = row.sizes[i];
      row.min_states = done == 0 ? s : std::min(row.min_states, s);
      row.max_states = std::max(row.max_states, s);
      total += static_cast<double>(s);
      ++done;
    }
    row.patterns = done;
    row.average_states = done ? total / static_cast<double>(done) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

TextModel reference_markov_model(const Alphabet& alphabet) {
  const auto sigma = alphabet.size();
  auto normalise = [](std::vector<double> w) {
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
    return w;
  };
  std::map<std::string, std::vector<double>> dists;
  std::vector<double> start(sigma);
  for (std::size_t a = 0; a < sigma; ++a) start[a] = static_cast<double>(a + 1);
  dists[""] = normalise(start);
  for (std::size_t b = 0; b < sigma; ++b) {
    std::vector<double> w(sigma);
    for (std::size_t a = 0; a < sigma; ++a) {
      w[a] = 1.0 + (a == b ? 2.0 : 0.0) + static_cast<double>(a);
    }
    dists[std::string(1, alphabet.symbol(static_cast<Symbol>(b)))] = normalise(w);
  }
  return markov_model(alphabet, 1, dists);
}

namespace {

struct Job {
  std::vector<Algorithm> algorithms;  // one (cost) or two (difference)
  Pattern pattern;
  std::size_t model;
};

struct JobOutcome {
  double max_deviation = 0.0;
  std::size_t distribution_checks = 0;
  std::size_t value_checks = 0;
  std::string counterexample;
};

std::string job_name(const Job& job) {
  std::string s;
  for (std::size_t i = 0; i < job.algorithms.size(); ++i) {
    if (i) s += "-";
    s += to_string(job.algorithms[i]);
  }
  return s;
}

JobOutcome run_job(const Job& job, const Alphabet& alphabet, const VerifyOptions& options,
                   const std::vector<TextModel>& models) {
  JobOutcome out;
  const auto& model = models[job.model];
  const auto& pattern = job.pattern;
  const auto make = options.make_analysis
                        ? options.make_analysis
                        : [](Algorithm a, const Pattern& p) { return make_analysis(a, p); };

  std::vector<Daa> components;
  for (auto a : job.algorithms) {
    components.push_back(minimize_daa(build_cost_daa(make(a, pattern))));
  }
  const Daa daa = components.size() == 1
                      ? components.front()
                      : minimize_daa(build_difference_daa(components[0], components[1]));
  const auto laws = cost_distributions_upto(build_paa(daa, model),
                                            static_cast<std::int64_t>(options.max_n));

  const auto sigma = alphabet.size();
  auto fail = [&](const std::string& what) {
    if (out.counterexample.empty()) {
      std::ostringstream msg;
      msg << "algorithm=" << job_name(job) << " pattern=" << pattern.to_string()
          << " model=" << model.label() << ' ' << what;
      out.counterexample = msg.str();
    }
  };

  for (std::size_t n = 0; n <= options.max_n; ++n) {
    std::map<std::int64_t, double> expected;
    const auto texts = checked_power(sigma, n, 10'000'000);
    for (std::uint64_t i = 0; i < texts; ++i) {
      const auto text = word_from_index(i, sigma, n);
      std::int64_t value = static_cast<std::int64_t>(
          reference_match(job.algorithms[0], pattern, text).cost);
      if (job.algorithms.size() == 2) {
        value -= static_cast<std::int64_t>(
            reference_match(job.algorithms[1], pattern, text).cost);
      }
      ++out.value_checks;
      const auto got = daa_value(daa, text);
      if (got != value) {
        fail("n=" + std::to_string(n) + " text=" + alphabet.decode(text) +
             " automaton value " + std::to_string(got) + " != matcher value " +
             std::to_string(value));
      }
      expected[value] += string_probability(model, text);
    }
    const auto& law = laws[n];
    auto check = [&](std::int64_t v, double want, double have) {
      const double dev = std::abs(want - have);
      out.max_deviation = std::max(out.max_deviation, dev);
      ++out.distribution_checks;
      if (!(dev <= options.tolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "n=" << n << " value=" << v << " expected=" << want << " got=" << have;
        fail(msg.str());
      }
    };
    for (const auto& [v, p] : expected) check(v, p, law.probability(v));
    for (const auto& [v, p] : law.entries()) {
      if (!expected.count(v)) check(v, 0.0, p);
    }
  }
  return out;
}

}  // namespace

VerifyReport verify_exhaustive(const Alphabet& alphabet, const VerifyOptions& options) {
  if (options.max_m < 1) throw Error(ErrorCode::kInvalidArgument, "max m must be >= 1");
  if (checked_power(alphabet.size(), options.max_n, 10'000'000) > 10'000'000) {
    throw Error(ErrorCode::kInvalidArgument,
                "exhaustive verification needs |alphabet|^max_n <= 10^7");
  }
  std::vector<TextModel> models = options.models;
  if (models.empty()) {
    models.push_back(uniform_model(alphabet));
    models.push_back(reference_markov_model(alphabet));
  }
  for (const auto& model : models) {
    if (!(model.alphabet() == alphabet)) {
      throw Error(ErrorCode::kAlphabetMismatch, "verification model alphabet differs");
    }
  }

  std::vector<std::vector<Algorithm>> combos;
  for (auto a : options.algorithms) combos.push_back({a});
  if (options.difference_mode) {
    for (auto a : options.algorithms) {
      for (auto b : options.algorithms) {
        if (a != b) combos.push_back({a, b});
      }
    }
  }
  std::vector<Job> jobs;
  for (std::size_t m = 1; m <= options.max_m; ++m) {
    for (const auto& pattern : enumerate_patterns(alphabet, m)) {
      for (const auto& combo : combos) {
        for (std::size_t k = 0; k < models.size(); ++k) jobs.push_back({combo, pattern, k});
      }
    }
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    outcomes[i] = run_job(jobs[i], alphabet, options, models);
  });

  VerifyReport report;
  for (const auto& o : outcomes) {
    report.max_deviation = std::max(report.max_deviation, o.max_deviation);
    report.distribution_checks += o.distribution_checks;
    report.value_checks += o.value_checks;
    if (!o.counterexample.empty() && report.passed) {
      report.passed = false;
      report.counterexample = o.counterexample;
    }
  }
  return report;
}

}  // namespace patdist
