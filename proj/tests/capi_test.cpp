// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C interface only.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "patdist/patdist.h"

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  pd_string_free(s);
  return out;
}

pd_model* uniform_dna() {
  pd_model* m = nullptr;
  REQUIRE(pd_model_iid("ACGT", "uniform", &m) == PD_OK);
  return m;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(pd_status_name(PD_ERR_SUM_NOT_ONE)) == "SUM_NOT_ONE");
  pd_model* m = nullptr;
  CHECK(pd_model_iid("AB", "A=0.5,B=0.6", &m) == PD_ERR_SUM_NOT_ONE);
  CHECK(m == nullptr);
  CHECK(std::string(pd_last_error()).find("sum") != std::string::npos);
  CHECK(pd_model_iid(nullptr, "uniform", &m) == PD_ERR_INVALID_ARGUMENT);
  pd_algorithm a;
  CHECK(pd_algorithm_parse("BNDM", &a) == PD_OK);
  CHECK(a == PD_ALGO_BDM);
  CHECK(pd_algorithm_parse("nope", &a) == PD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pd_algorithm_name(PD_ALGO_KMP)) == "kmp");
  CHECK(pd_default_state_cap() > 0);
}

TEST_CASE("window analysis through the C API") {
  pd_analysis* h = nullptr;
  REQUIRE(pd_analysis_new(PD_ALGO_HORSPOOL, "ACGTAC", "ACGT", &h) == PD_OK);
  int cost = 0, shift = 0;
  CHECK(pd_analysis_window(h, "TTTTTC", &cost, &shift) == PD_OK);
  CHECK(shift == 4);
  CHECK(pd_analysis_window(h, "ACGTAT", &cost, &shift) == PD_OK);
  CHECK(cost == 1);
  CHECK(pd_analysis_window(h, "ACG", &cost, &shift) == PD_ERR_INVALID_ARGUMENT);
  pd_analysis_free(h);

  pd_analysis* bad = nullptr;
  CHECK(pd_analysis_new(PD_ALGO_BOM, "ACX", "ACGT", &bad) == PD_ERR_INVALID_ARGUMENT);

  pd_analysis* ab = nullptr;
  REQUIRE(pd_analysis_new(PD_ALGO_HORSPOOL, "AB", "AB", &ab) == PD_OK);
  uint64_t occ = 0, total = 0;
  CHECK(pd_analysis_run(ab, "ABAB", &occ, &total) == PD_OK);
  CHECK(occ == 2);
  CHECK(total == 4);
  pd_analysis_free(ab);
}

TEST_CASE("automata and distributions through the C API") {
  pd_model* model = uniform_dna();
  pd_analysis* a = nullptr;
  REQUIRE(pd_analysis_new(PD_ALGO_BDM, "ACGT", "ACGT", &a) == PD_OK);
  pd_daa* raw = nullptr;
  REQUIRE(pd_daa_build(a, 0, &raw) == PD_OK);
  pd_daa* min = nullptr;
  REQUIRE(pd_daa_minimize(raw, &min) == PD_OK);
  CHECK(pd_daa_state_count(min) <= pd_daa_state_count(raw));
  int64_t v1 = 0, v2 = 0;
  CHECK(pd_daa_value(raw, "ACGTTACGTACGT", &v1) == PD_OK);
  CHECK(pd_daa_value(min, "ACGTTACGTACGT", &v2) == PD_OK);
  CHECK(v1 == v2);
  char* dump = nullptr;
  CHECK(pd_daa_dump(min, &dump) == PD_OK);
  CHECK(take(dump).rfind("daa states", 0) == 0);

  pd_dist* d = nullptr;
  REQUIRE(pd_dist_from_daa(min, model, 50, &d) == PD_OK);
  CHECK(std::abs(pd_dist_total_mass(d) - 1.0) < 1e-9);
  pd_stats s{};
  CHECK(pd_dist_stats(d, &s) == PD_OK);
  CHECK(s.min <= s.median);
  CHECK(s.median <= s.max);
  int64_t value = 0;
  double prob = 0;
  CHECK(pd_dist_entry(d, 0, &value, &prob) == PD_OK);
  CHECK(value == s.min);
  CHECK(pd_dist_entry(d, pd_dist_size(d), &value, &prob) == PD_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  CHECK(pd_dist_to_csv(d, &csv) == PD_OK);
  const std::string text = take(csv);
  pd_dist* back = nullptr;
  CHECK(pd_dist_from_csv(text.c_str(), &back) == PD_OK);
  CHECK(pd_dist_size(back) == pd_dist_size(d));
  pd_dist_free(back);

  double dev = 1.0;
  CHECK(pd_certify(min, model, 15, &dev) == PD_OK);
  CHECK(dev < 1e-12);

  pd_daa* self = nullptr;
  REQUIRE(pd_daa_difference(min, min, 0, &self) == PD_OK);
  pd_daa* self_min = nullptr;
  REQUIRE(pd_daa_minimize(self, &self_min) == PD_OK);
  CHECK(pd_daa_state_count(self_min) == 1);

  pd_dist_free(d);
  pd_daa_free(self_min);
  pd_daa_free(self);
  pd_daa_free(min);
  pd_daa_free(raw);
  pd_analysis_free(a);
  pd_model_free(model);
}

TEST_CASE("pipeline entry points") {
  pd_model* model = uniform_dna();
  pd_dist* d = nullptr;
  pd_build_info info{};
  REQUIRE(pd_dist_cost(PD_ALGO_HORSPOOL, "ACGTAC", model, 100, 0, &d, &info) == PD_OK);
  CHECK(info.full_space == 28672);
  CHECK(info.minimized_states <= info.raw_states);
  char* json = nullptr;
  CHECK(pd_dist_to_json(d, &json) == PD_OK);
  CHECK(take(json).find("\"algorithm\": \"horspool\"") != std::string::npos);
  pd_dist_free(d);

  CHECK(pd_dist_cost(PD_ALGO_BDM, "ACGTAC", model, 100, 10, &d, nullptr) == PD_ERR_STATE_CAP);

  pd_difference_info di{};
  REQUIRE(pd_dist_difference(PD_ALGO_HORSPOOL, PD_ALGO_BDM, "CGAAAA", model, 100, 0, &d, &di) ==
          PD_OK);
  CHECK(std::abs(di.p_less + di.p_equal + di.p_greater - 1.0) < 1e-9);
  CHECK(di.p_less > 0.5);
  pd_dist_free(d);

  pd_dist* k = nullptr;
  REQUIRE(pd_dist_kmp(500, &k) == PD_OK);
  CHECK(pd_dist_size(k) == 1);
  CHECK(pd_dist_probability(k, 500) == 1.0);
  pd_dist_free(k);

  pd_analysis* a = nullptr;
  REQUIRE(pd_analysis_new(PD_ALGO_HORSPOOL, "ACGTAC", "ACGT", &a) == PD_OK);
  double mean = 0, se = 0;
  REQUIRE(pd_dist_simulate(a, model, 100, 1000, 7, &d, &mean, &se) == PD_OK);
  CHECK(se > 0);
  pd_dist_free(d);
  pd_analysis_free(a);

  pd_model* other = nullptr;
  REQUIRE(pd_model_iid("AC", "uniform", &other) == PD_OK);
  pd_analysis* dna = nullptr;
  REQUIRE(pd_analysis_new(PD_ALGO_BDM, "AC", "ACGT", &dna) == PD_OK);
  pd_daa* daa = nullptr;
  REQUIRE(pd_daa_build(dna, 0, &daa) == PD_OK);
  CHECK(pd_dist_from_daa(daa, other, 10, &d) == PD_ERR_ALPHABET_MISMATCH);
  pd_daa_free(daa);
  pd_analysis_free(dna);
  pd_model_free(other);
  pd_model_free(model);
}

TEST_CASE("models through the C API") {
  const char* json = R"({"alphabet": "AB", "contexts": ["s", "t", "lost"], "start": "s",
    "transitions": [{"from": "s", "symbol": "A", "to": "t", "prob": 0.5},
                    {"from": "s", "symbol": "B", "to": "s", "prob": 0.5},
                    {"from": "t", "symbol": "A", "to": "s", "prob": 1.0},
                    {"from": "lost", "symbol": "A", "to": "s", "prob": 1.0}]})";
  pd_model* m = nullptr;
  REQUIRE(pd_model_from_json(json, &m) == PD_OK);
  CHECK(pd_model_context_count(m) == 2);
  CHECK(pd_model_is_deterministic_context(m) == 1);
  char* warnings = nullptr;
  CHECK(pd_model_warnings(m, &warnings) == PD_OK);
  CHECK(take(warnings).find("lost") != std::string::npos);
  double p = 0;
  CHECK(pd_model_string_probability(m, "AA", &p) == PD_OK);
  CHECK(p == doctest::Approx(0.5));
  pd_model_free(m);

  int ok = 1;
  char* report = nullptr;
  const char* short_row = R"({"alphabet": "AB", "contexts": ["s"], "start": "s",
    "transitions": [{"from": "s", "symbol": "A", "to": "s", "prob": 0.49},
                    {"from": "s", "symbol": "B", "to": "s", "prob": 0.5}]})";
  CHECK(pd_model_validate_json(short_row, &ok, &report) == PD_OK);
  CHECK(ok == 0);
  CHECK(take(report).find("0.01") != std::string::npos);
  CHECK(pd_model_from_json(short_row, &m) == PD_ERR_SUM_NOT_ONE);

  const char* markov = R"({"alphabet": "AB", "order": 1,
    "distributions": {"": [0.5, 0.5], "A": [0.9, 0.1], "B": [0.2, 0.8]}})";
  REQUIRE(pd_markov_from_json(markov, &m) == PD_OK);
  CHECK(pd_model_string_probability(m, "AA", &p) == PD_OK);
  CHECK(p == doctest::Approx(0.45));
  pd_model_free(m);
  CHECK(pd_model_load("/nonexistent.json", &m) == PD_ERR_IO);
  CHECK(pd_model_from_json("{", &m) == PD_ERR_PARSE);
}

TEST_CASE("experiments through the C API") {
  pd_sweep_row row{};
  REQUIRE(pd_sweep("ACGT", 2, PD_ALGO_BOM, 0, 2, &row) == PD_OK);
  CHECK(row.min_states == 4);
  CHECK(row.max_states == 4);
  CHECK(row.full_space == 48);
  CHECK(row.complete == 1);

  pd_verify_report report{};
  REQUIRE(pd_verify("AC", 2, 6, 1, 2, &report) == PD_OK);
  CHECK(report.passed == 1);
  CHECK(report.max_deviation < 1e-9);
}
