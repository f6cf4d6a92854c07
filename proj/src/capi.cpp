// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/patdist.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "patdist/daa.hpp"
#include "patdist/diffdaa.hpp"
#include "patdist/distribution.hpp"
#include "patdist/error.hpp"
#include "patdist/matchers.hpp"
#include "patdist/paa.hpp"
#include "patdist/pipeline.hpp"
#include "patdist/textmodel.hpp"

struct pd_model {
  patdist::TextModel model;
};
struct pd_analysis {
  patdist::WindowAnalysis analysis;
};
struct pd_daa {
  patdist::Daa daa;
};
struct pd_dist {
  patdist::Distribution dist;
};

namespace {

thread_local std::string g_last_error;

pd_status to_status(patdist::ErrorCode code) {
  using patdist::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return PD_ERR_INVALID_ARGUMENT;
    case ErrorCode::kSumNotOne: return PD_ERR_SUM_NOT_ONE;
    case ErrorCode::kAlphabetMismatch: return PD_ERR_ALPHABET_MISMATCH;
    case ErrorCode::kStateCapExceeded: return PD_ERR_STATE_CAP;
    case ErrorCode::kIo: return PD_ERR_IO;
    case ErrorCode::kParse: return PD_ERR_PARSE;
    case ErrorCode::kInternal: return PD_ERR_INTERNAL;
  }
  return PD_ERR_INTERNAL;
}

pd_status fail(pd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
pd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PD_OK;
  } catch (const patdist::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PD_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw patdist::Error(patdist::ErrorCode::kInvalidArgument,
                         std::string(what) + " must not be NULL");
  }
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t cap_or_default(uint64_t cap) {
  return cap == 0 ? patdist::default_state_cap() : static_cast<std::size_t>(cap);
}

patdist::Algorithm to_cpp(pd_algorithm a) {
  switch (a) {
    case PD_ALGO_HORSPOOL: return patdist::Algorithm::kHorspool;
    case PD_ALGO_BDM: return patdist::Algorithm::kBdm;
    case PD_ALGO_BOM: return patdist::Algorithm::kBom;
    case PD_ALGO_KMP: break;
  }
  throw patdist::Error(patdist::ErrorCode::kInvalidArgument,
                       "algorithm has no window analysis");
}

pd_algorithm to_c(patdist::Algorithm a) {
  switch (a) {
    case patdist::Algorithm::kHorspool: return PD_ALGO_HORSPOOL;
    case patdist::Algorithm::kBdm: return PD_ALGO_BDM;
    case patdist::Algorithm::kBom: return PD_ALGO_BOM;
  }
  return PD_ALGO_HORSPOOL;
}

template <typename Handle, typename Value>
void emit(Handle** out, Value&& value) {
  require(out, "out");
  *out = new Handle{std::forward<Value>(value)};
}

}  // namespace

extern "C" {

const char* pd_last_error(void) { return g_last_error.c_str(); }

const char* pd_status_name(pd_status status) {
  switch (status) {
    case PD_OK: return "OK";
    case PD_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case PD_ERR_SUM_NOT_ONE: return "SUM_NOT_ONE";
    case PD_ERR_ALPHABET_MISMATCH: return "ALPHABET_MISMATCH";
    case PD_ERR_STATE_CAP: return "STATE_CAP_EXCEEDED";
    case PD_ERR_IO: return "IO_ERROR";
    case PD_ERR_PARSE: return "PARSE_ERROR";
    case PD_ERR_INTERNAL: return "INTERNAL_ERROR";
  }
  return "UNKNOWN";
}

void pd_string_free(char* s) { std::free(s); }

uint64_t pd_default_state_cap(void) { return patdist::default_state_cap(); }

pd_status pd_algorithm_parse(const char* name, pd_algorithm* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "kmp") {
      *out = PD_ALGO_KMP;
      return;
    }
    auto a = patdist::parse_algorithm(name);
    if (!a) {
      throw patdist::Error(patdist::ErrorCode::kInvalidArgument,
                           std::string("unknown algorithm '") + name + "'");
    }
    *out = to_c(*a);
  });
}

const char* pd_algorithm_name(pd_algorithm algorithm) {
  switch (algorithm) {
    case PD_ALGO_HORSPOOL: return "horspool";
    case PD_ALGO_BDM: return "bdm";
    case PD_ALGO_BOM: return "bom";
    case PD_ALGO_KMP: return "kmp";
  }
  return "unknown";
}

pd_status pd_model_iid(const char* alphabet, const char* spec, pd_model** out) {
  return guarded([&] {
    require(alphabet, "alphabet");
    require(spec, "spec");
    emit(out, patdist::parse_iid_spec(patdist::Alphabet(alphabet), spec));
  });
}

pd_status pd_model_from_json(const char* json_text, pd_model** out) {
  return guarded([&] {
    require(json_text, "json_text");
    emit(out, patdist::load_model_json(json_text));
  });
}

pd_status pd_model_load(const char* path, pd_model** out) {
  return guarded([&] {
    require(path, "path");
    emit(out, patdist::load_model_file(path));
  });
}

pd_status pd_markov_from_json(const char* json_text, pd_model** out) {
  return guarded([&] {
    require(json_text, "json_text");
    emit(out, patdist::load_markov_json(json_text));
  });
}

pd_status pd_markov_load(const char* path, pd_model** out) {
  return guarded([&] {
    require(path, "path");
    emit(out, patdist::load_markov_file(path));
  });
}

void pd_model_free(pd_model* model) { delete model; }

const char* pd_model_alphabet(const pd_model* model) {
  return model ? model->model.alphabet().symbols().c_str() : "";
}

const char* pd_model_label(const pd_model* model) {
  return model ? model->model.label().c_str() : "";
}

size_t pd_model_context_count(const pd_model* model) {
  return model ? model->model.context_count() : 0;
}

int pd_model_is_deterministic_context(const pd_model* model) {
  return model && model->model.deterministic_context() ? 1 : 0;
}

pd_status pd_model_warnings(const pd_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    std::string text;
    for (const auto& w : model->model.warnings()) text += w + "\n";
    *out = copy_string(text);
  });
}

pd_status pd_model_string_probability(const pd_model* model, const char* text,
                                      double* out) {
  return guarded([&] {
    require(model, "model");
    require(text, "text");
    require(out, "out");
    *out = patdist::string_probability(model->model,
                                       model->model.alphabet().encode(text));
  });
}

pd_status pd_model_validate_json(const char* json_text, int* ok, char** report) {
  return guarded([&] {
    require(json_text, "json_text");
    require(ok, "ok");
    require(report, "report");
    try {
      auto model = patdist::load_model_json(json_text);
      std::string text;
      for (const auto& w : model.warnings()) text += "warning: " + w + "\n";
      *ok = 1;
      *report = copy_string(text);
    } catch (const patdist::Error& e) {
      if (e.code() == patdist::ErrorCode::kParse || e.code() == patdist::ErrorCode::kIo) {
        throw;
      }
      *ok = 0;
      *report = copy_string(e.what());
    }
  });
}

pd_status pd_analysis_new(pd_algorithm algorithm, const char* pattern,
                          const char* alphabet, pd_analysis** out) {
  return guarded([&] {
    require(pattern, "pattern");
    require(alphabet, "alphabet");
    patdist::Pattern p{patdist::Alphabet(alphabet), std::string_view(pattern)};
    emit(out, patdist::make_analysis(to_cpp(algorithm), p));
  });
}

void pd_analysis_free(pd_analysis* analysis) { delete analysis; }

pd_status pd_analysis_window(const pd_analysis* analysis, const char* window, int* cost,
                             int* shift) {
  return guarded([&] {
    require(analysis, "analysis");
    require(window, "window");
    const auto& a = analysis->analysis;
    const auto w = a.pattern().alphabet().encode(window);
    const auto r = a.evaluate(w);
    if (cost) *cost = r.cost;
    if (shift) *shift = r.shift;
  });
}

pd_status pd_analysis_run(const pd_analysis* analysis, const char* text,
                          uint64_t* occurrences, uint64_t* cost) {
  return guarded([&] {
    require(analysis, "analysis");
    require(text, "text");
    const auto& a = analysis->analysis;
    const auto r = patdist::run_matcher(a, a.pattern().alphabet().encode(text));
    if (occurrences) *occurrences = r.occurrences;
    if (cost) *cost = r.cost;
  });
}

pd_status pd_daa_build(const pd_analysis* analysis, uint64_t state_cap, pd_daa** out) {
  return guarded([&] {
    require(analysis, "analysis");
    emit(out, patdist::build_cost_daa(analysis->analysis, cap_or_default(state_cap)));
  });
}

pd_status pd_daa_minimize(const pd_daa* daa, pd_daa** out) {
  return guarded([&] {
    require(daa, "daa");
    emit(out, patdist::minimize_daa(daa->daa));
  });
}

pd_status pd_daa_difference(const pd_daa* a, const pd_daa* b, uint64_t state_cap,
                            pd_daa** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    emit(out, patdist::build_difference_daa(a->daa, b->daa, cap_or_default(state_cap)));
  });
}

void pd_daa_free(pd_daa* daa) { delete daa; }

size_t pd_daa_state_count(const pd_daa* daa) { return daa ? daa->daa.state_count() : 0; }

pd_status pd_daa_value(const pd_daa* daa, const char* text, int64_t* out) {
  return guarded([&] {
    require(daa, "daa");
    require(text, "text");
    require(out, "out");
    *out = patdist::daa_value(daa->daa, daa->daa.alphabet().encode(text));
  });
}

pd_status pd_daa_dump(const pd_daa* daa, char** out) {
  return guarded([&] {
    require(daa, "daa");
    require(out, "out");
    std::ostringstream s;
    patdist::write_daa_dump(s, daa->daa);
    *out = copy_string(s.str());
  });
}

pd_status pd_dist_from_daa(const pd_daa* daa, const pd_model* model, int64_t n,
                           pd_dist** out) {
  return guarded([&] {
    require(daa, "daa");
    require(model, "model");
    auto d = patdist::cost_distribution(patdist::build_paa(daa->daa, model->model), n);
    d.metadata().alphabet = model->model.alphabet().symbols();
    d.metadata().model = model->model.label();
    emit(out, std::move(d));
  });
}

pd_status pd_dist_cost(pd_algorithm algorithm, const char* pattern, const pd_model* model,
                       int64_t n, uint64_t state_cap, pd_dist** out, pd_build_info* info) {
  return guarded([&] {
    require(out, "out");
    if (algorithm == PD_ALGO_KMP) {
      auto d = patdist::kmp_distribution(n);
      if (model) {
        d.metadata().alphabet = model->model.alphabet().symbols();
        d.metadata().model = model->model.label();
      }
      if (pattern) d.metadata().pattern = pattern;
      if (info) *info = pd_build_info{0, 0, 0, 0};
      emit(out, std::move(d));
      return;
    }
    require(pattern, "pattern");
    require(model, "model");
    patdist::Pattern p(model->model.alphabet(), std::string_view(pattern));
    auto r = patdist::compute_cost_distribution(patdist::make_analysis(to_cpp(algorithm), p),
                                                model->model, n, cap_or_default(state_cap));
    if (info) {
      info->raw_states = r.raw_states;
      info->minimized_states = r.minimized_states;
      info->full_space = patdist::full_state_space_size(p.alphabet().size(), p.length());
      info->paa_states = r.paa_states;
    }
    emit(out, std::move(r.distribution));
  });
}

pd_status pd_dist_difference(pd_algorithm a, pd_algorithm b, const char* pattern,
                             const pd_model* model, int64_t n, uint64_t state_cap,
                             pd_dist** out, pd_difference_info* info) {
  return guarded([&] {
    require(pattern, "pattern");
    require(model, "model");
    patdist::Pattern p(model->model.alphabet(), std::string_view(pattern));
    auto r = patdist::difference_distribution(patdist::make_analysis(to_cpp(a), p),
                                              patdist::make_analysis(to_cpp(b), p),
                                              model->model, n, cap_or_default(state_cap));
    if (info) {
      info->p_less = r.summary.less;
      info->p_equal = r.summary.equal;
      info->p_greater = r.summary.greater;
      info->minimized_a = r.minimized_a;
      info->minimized_b = r.minimized_b;
      info->product_states = r.product_states;
      info->minimized_product = r.minimized_product;
      info->paa_states = r.paa_states;
    }
    emit(out, std::move(r.distribution));
  });
}

pd_status pd_dist_kmp(int64_t n, pd_dist** out) {
  return guarded([&] { emit(out, patdist::kmp_distribution(n)); });
}

pd_status pd_dist_simulate(const pd_analysis* analysis, const pd_model* model, int64_t n,
                           uint64_t samples, uint64_t seed, pd_dist** out, double* mean,
                           double* standard_error) {
  return guarded([&] {
    require(analysis, "analysis");
    require(model, "model");
    auto r = patdist::monte_carlo_distribution(analysis->analysis, model->model, n,
                                               samples, seed);
    if (mean) *mean = r.mean;
    if (standard_error) *standard_error = r.standard_error;
    emit(out, std::move(r.distribution));
  });
}

pd_status pd_dist_from_csv(const char* csv_text, pd_dist** out) {
  return guarded([&] {
    require(csv_text, "csv_text");
    std::istringstream in(csv_text);
    emit(out, patdist::read_csv(in));
  });
}

void pd_dist_free(pd_dist* dist) { delete dist; }

size_t pd_dist_size(const pd_dist* dist) { return dist ? dist->dist.size() : 0; }

pd_status pd_dist_entry(const pd_dist* dist, size_t index, int64_t* value,
                        double* probability) {
  return guarded([&] {
    require(dist, "dist");
    if (index >= dist->dist.size()) {
      throw patdist::Error(patdist::ErrorCode::kInvalidArgument, "entry index out of range");
    }
    const auto& e = dist->dist.entries()[index];
    if (value) *value = e.first;
    if (probability) *probability = e.second;
  });
}

double pd_dist_probability(const pd_dist* dist, int64_t value) {
  return dist ? dist->dist.probability(value) : 0.0;
}

double pd_dist_total_mass(const pd_dist* dist) { return dist ? dist->dist.total_mass() : 0.0; }

pd_status pd_dist_stats(const pd_dist* dist, pd_stats* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    const auto s = patdist::distribution_stats(dist->dist);
    out->mean = s.mean;
    out->variance = s.variance;
    out->min = s.min;
    out->max = s.max;
    out->q05 = s.quantiles[0].second;
    out->q25 = s.quantiles[1].second;
    out->median = s.quantiles[2].second;
    out->q75 = s.quantiles[3].second;
    out->q95 = s.quantiles[4].second;
  });
}

pd_status pd_dist_quantile(const pd_dist* dist, double q, int64_t* out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = patdist::quantile(dist->dist, q);
  });
}

pd_status pd_dist_to_csv(const pd_dist* dist, char** out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    std::ostringstream s;
    patdist::write_csv(s, dist->dist);
    *out = copy_string(s.str());
  });
}

pd_status pd_dist_to_json(const pd_dist* dist, char** out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    std::ostringstream s;
    patdist::write_json(s, dist->dist);
    *out = copy_string(s.str());
  });
}

pd_status pd_certify(const pd_daa* daa, const pd_model* model, int64_t n,
                     double* max_abs_deviation) {
  return guarded([&] {
    require(daa, "daa");
    require(model, "model");
    require(max_abs_deviation, "max_abs_deviation");
    *max_abs_deviation =
        patdist::certify_distribution(daa->daa, model->model, n).max_abs_deviation;
  });
}

pd_status pd_sweep(const char* alphabet, int m, pd_algorithm algorithm, uint64_t state_cap,
                   unsigned threads, pd_sweep_row* out) {
  return guarded([&] {
    require(alphabet, "alphabet");
    require(out, "out");
    if (m < 1) throw patdist::Error(patdist::ErrorCode::kInvalidArgument, "m must be >= 1");
    const patdist::Algorithm algos[] = {to_cpp(algorithm)};
    const auto rows = patdist::sweep_automaton_sizes(
        patdist::Alphabet(alphabet), static_cast<std::size_t>(m), algos,
        cap_or_default(state_cap), threads);
    const auto& r = rows.front();
    out->algorithm = algorithm;
    out->patterns = r.patterns;
    out->min_states = r.min_states;
    out->max_states = r.max_states;
    out->average_states = r.average_states;
    out->full_space = r.full_space;
    out->complete = r.complete ? 1 : 0;
    if (!r.complete) g_last_error = r.error;
  });
}

pd_status pd_verify(const char* alphabet, int max_m, int max_n, int difference_mode,
                    unsigned threads, pd_verify_report* out) {
  return guarded([&] {
    require(alphabet, "alphabet");
    require(out, "out");
    if (max_m < 1 || max_n < 0) {
      throw patdist::Error(patdist::ErrorCode::kInvalidArgument, "bad verification bounds");
    }
    patdist::VerifyOptions options;
    options.max_m = static_cast<std::size_t>(max_m);
    options.max_n = static_cast<std::size_t>(max_n);
    options.difference_mode = difference_mode != 0;
    options.threads = threads;
    const auto r = patdist::verify_exhaustive(patdist::Alphabet(alphabet), options);
    out->passed = r.passed ? 1 : 0;
    out->max_deviation = r.max_deviation;
    out->distribution_checks = r.distribution_checks;
    out->value_checks = r.value_checks;
    std::memset(out->counterexample, 0, sizeof out->counterexample);
    std::strncpy(out->counterexample, r.counterexample.c_str(),
                 sizeof out->counterexample - 1);
  });
}

}  // extern "C"
