// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the libpatdist C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "patdist/patdist.h"

namespace {

struct CliError : std::runtime_error {
  CliError(int code, const std::string& message)
      : std::runtime_error(message), exit_code(code) {}
  int exit_code;
};

constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

void check(pd_status status) {
  if (status != PD_OK) {
    throw CliError(kExitError,
                   std::string(pd_status_name(status)) + ": " + pd_last_error());
  }
}

struct ModelDeleter {
  void operator()(pd_model* p) const { pd_model_free(p); }
};
struct AnalysisDeleter {
  void operator()(pd_analysis* p) const { pd_analysis_free(p); }
};
struct DaaDeleter {
  void operator()(pd_daa* p) const { pd_daa_free(p); }
};
struct DistDeleter {
  void operator()(pd_dist* p) const { pd_dist_free(p); }
};
using ModelPtr = std::unique_ptr<pd_model, ModelDeleter>;
using AnalysisPtr = std::unique_ptr<pd_analysis, AnalysisDeleter>;
using DaaPtr = std::unique_ptr<pd_daa, DaaDeleter>;
using DistPtr = std::unique_ptr<pd_dist, DistDeleter>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  pd_string_free(s);
  return out;
}

struct Options {
  std::vector<std::string> algorithms;
  std::string pattern;
  std::string alphabet = "ACGT";
  bool alphabet_given = false;
  std::string iid;
  std::string markov;
  std::string model_file;
  std::int64_t n = 100;
  std::string format = "csv";
  std::string out;
  std::uint64_t state_cap = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  // dist
  bool certify = false;
  std::string dump_daa;
  // simulate
  bool check_exact = false;
  // sweep
  int m_min = 2;
  int m_max = 5;
  bool allow_large = false;
  // verify
  int max_m = 3;
  int max_n = 10;
  bool difference = false;
  // stats
  std::string input;
};

pd_algorithm parse_algorithm(const std::string& name) {
  pd_algorithm a;
  check(pd_algorithm_parse(name.c_str(), &a));
  return a;
}

ModelPtr load_model(const Options& o) {
  const int sources = !o.iid.empty() + !o.markov.empty() + !o.model_file.empty();
  if (sources > 1) {
    throw CliError(kExitError, "give at most one of --iid, --markov, --model");
  }
  pd_model* raw = nullptr;
  if (!o.markov.empty()) {
    check(pd_markov_load(o.markov.c_str(), &raw));
  } else if (!o.model_file.empty()) {
    check(pd_model_load(o.model_file.c_str(), &raw));
  } else {
    const std::string spec = o.iid.empty() ? "uniform" : o.iid;
    check(pd_model_iid(o.alphabet.c_str(), spec.c_str(), &raw));
  }
  ModelPtr model(raw);
  if (o.alphabet_given && o.alphabet != pd_model_alphabet(raw)) {
    throw CliError(kExitError, std::string("ALPHABET_MISMATCH: --alphabet ") + o.alphabet +
                                   " differs from model alphabet " + pd_model_alphabet(raw));
  }
  char* warnings = nullptr;
  check(pd_model_warnings(raw, &warnings));
  std::cerr << take_string(warnings);
  return model;
}

void write_output(const Options& o, const std::string& data) {
  if (o.out.empty() || o.out == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw CliError(kExitError, "IO_ERROR: cannot write " + o.out);
  file << data;
}

std::string serialise(const Options& o, const pd_dist* dist) {
  char* text = nullptr;
  if (o.format == "json") {
    check(pd_dist_to_json(dist, &text));
  } else {
    check(pd_dist_to_csv(dist, &text));
  }
  return take_string(text);
}

pd_stats stats_of(const pd_dist* dist) {
  pd_stats s;
  check(pd_dist_stats(dist, &s));
  return s;
}

void print_stats(std::ostream& out, const pd_stats& s) {
  out.precision(10);
  out << "mean " << s.mean << "\nvariance " << s.variance << "\nmin " << s.min << "\nmax "
      << s.max << "\nq05 " << s.q05 << "\nq25 " << s.q25 << "\nmedian " << s.median
      << "\nq75 " << s.q75 << "\nq95 " << s.q95 << '\n';
}

void require_pattern(const Options& o) {
  if (o.pattern.empty()) throw CliError(kExitError, "--pattern is required");
  if (o.n < 0) throw CliError(kExitError, "--n must be >= 0");
}

int cmd_dist(const Options& o) {
  if (o.algorithms.size() != 1) throw CliError(kExitError, "dist takes exactly one --algo");
  const auto algo = parse_algorithm(o.algorithms.front());
  if (algo == PD_ALGO_KMP) {
    if (o.n < 0) throw CliError(kExitError, "--n must be >= 0");
    pd_dist* raw = nullptr;
    check(pd_dist_cost(algo, o.pattern.empty() ? nullptr : o.pattern.c_str(), nullptr, o.n,
                       0, &raw, nullptr));
    DistPtr dist(raw);
    write_output(o, serialise(o, dist.get()));
    std::cerr << "kmp: every text character is read once\n";
    return 0;
  }
  require_pattern(o);
  auto model = load_model(o);
  pd_build_info info{};
  pd_dist* raw_dist = nullptr;
  check(pd_dist_cost(algo, o.pattern.c_str(), model.get(), o.n, o.state_cap, &raw_dist, &info));
  DistPtr dist(raw_dist);

  // The certificate and the dump need the minimized automaton itself.
  DaaPtr min_daa;
  if (o.certify || !o.dump_daa.empty()) {
    pd_analysis* raw_analysis = nullptr;
    check(pd_analysis_new(algo, o.pattern.c_str(), pd_model_alphabet(model.get()),
                          &raw_analysis));
    AnalysisPtr analysis(raw_analysis);
    pd_daa* raw = nullptr;
    check(pd_daa_build(analysis.get(), o.state_cap, &raw));
    DaaPtr built(raw);
    check(pd_daa_minimize(built.get(), &raw));
    min_daa.reset(raw);
  }
  const auto s = stats_of(dist.get());
  std::cerr << pd_algorithm_name(algo) << " pattern " << o.pattern << " n " << o.n
            << " model " << pd_model_label(model.get()) << '\n'
            << "states: full space " << info.full_space << ", reachable " << info.raw_states
            << ", minimized " << info.minimized_states << ", PAA " << info.paa_states << '\n'
            << "mean " << s.mean << ", variance " << s.variance << '\n';

  int exit_code = 0;
  if (o.certify) {
    double dev = 0.0;
    check(pd_certify(min_daa.get(), model.get(), o.n, &dev));
    std::cerr << "exact-rational certification: max deviation " << dev << '\n';
    if (!(dev <= 1e-9)) exit_code = kExitCheckFailed;
  }
  if (!o.dump_daa.empty()) {
    char* text = nullptr;
    check(pd_daa_dump(min_daa.get(), &text));
    std::ofstream file(o.dump_daa);
    if (!file) throw CliError(kExitError, "IO_ERROR: cannot write " + o.dump_daa);
    file << take_string(text);
  }
  write_output(o, serialise(o, dist.get()));
  return exit_code;
}

int cmd_compare(const Options& o) {
  if (o.algorithms.size() != 2) throw CliError(kExitError, "compare takes two --algo flags");
  require_pattern(o);
  const auto a = parse_algorithm(o.algorithms[0]);
  const auto b = parse_algorithm(o.algorithms[1]);
  if (a == PD_ALGO_KMP || b == PD_ALGO_KMP) {
    throw CliError(kExitError, "compare supports horspool, bdm and bom");
  }
  auto model = load_model(o);
  pd_dist* raw = nullptr;
  pd_difference_info info{};
  check(pd_dist_difference(a, b, o.pattern.c_str(), model.get(), o.n, o.state_cap, &raw,
                           &info));
  DistPtr dist(raw);
  const auto s = stats_of(dist.get());
  char line[256];
  std::snprintf(line, sizeof line,
                "P(%s < %s) = %.1f%%  P(tie) = %.1f%%  P(%s > %s) = %.1f%%\n",
                pd_algorithm_name(a), pd_algorithm_name(b), 100.0 * info.p_less,
                100.0 * info.p_equal, pd_algorithm_name(a), pd_algorithm_name(b),
                100.0 * info.p_greater);
  std::cerr << pd_algorithm_name(a) << " - " << pd_algorithm_name(b) << " pattern "
            << o.pattern << " n " << o.n << " model " << pd_model_label(model.get()) << '\n'
            << "states: minimized " << info.minimized_a << " x " << info.minimized_b
            << ", product " << info.product_states << ", minimized product "
            << info.minimized_product << ", PAA " << info.paa_states << '\n'
            << "mean difference " << s.mean << ", variance " << s.variance << '\n'
            << line;
  write_output(o, serialise(o, dist.get()));
  return 0;
}

int cmd_sweep(const Options& o) {
  if (o.m_min < 1 || o.m_max < o.m_min) throw CliError(kExitError, "bad --m range");
  if (o.m_max >= 6 && !o.allow_large) {
    throw CliError(kExitError, "m >= 6 needs --allow-large (long runtime)");
  }
  std::vector<pd_algorithm> algos;
  if (o.algorithms.empty()) {
    algos = {PD_ALGO_HORSPOOL, PD_ALGO_BOM, PD_ALGO_BDM};
  } else {
    for (const auto& name : o.algorithms) algos.push_back(parse_algorithm(name));
  }
  std::ostringstream csv;
  csv << "m,full_space,algorithm,patterns,min,avg,max,complete\n";
  bool complete = true;
  for (int m = o.m_min; m <= o.m_max; ++m) {
    for (auto algo : algos) {
      if (algo == PD_ALGO_KMP) throw CliError(kExitError, "sweep does not apply to kmp");
      pd_sweep_row row{};
      check(pd_sweep(o.alphabet.c_str(), m, algo, o.state_cap, o.threads, &row));
      if (!row.complete) {
        complete = false;
        std::cerr << "warning: partial results for m=" << m << ' ' << pd_algorithm_name(algo)
                  << ": " << pd_last_error() << '\n';
      }
      char avg[32];
      std::snprintf(avg, sizeof avg, "%.4f", row.average_states);
      csv << m << ',' << row.full_space << ',' << pd_algorithm_name(algo) << ','
          << row.patterns << ',' << row.min_states << ',' << avg << ',' << row.max_states
          << ',' << (row.complete ? "yes" : "no") << '\n';
      char human[160];
      std::snprintf(human, sizeof human, "m=%d %-8s full %-8llu minimized %llu / %.1f / %llu\n",
                    m, pd_algorithm_name(algo),
                    static_cast<unsigned long long>(row.full_space),
                    static_cast<unsigned long long>(row.min_states), row.average_states,
                    static_cast<unsigned long long>(row.max_states));
      std::cerr << human;
    }
  }
  write_output(o, csv.str());
  return complete ? 0 : kExitCheckFailed;
}

int cmd_verify(const Options& o) {
  pd_verify_report report{};
  check(pd_verify(o.alphabet.c_str(), o.max_m, o.max_n, o.difference ? 1 : 0, o.threads,
                  &report));
  std::ostringstream text;
  text << (report.passed ? "PASS" : "FAIL") << " alphabet=" << o.alphabet
       << " max_m=" << o.max_m << " max_n=" << o.max_n
       << (o.difference ? " mode=difference" : " mode=cost")
       << " distribution_checks=" << report.distribution_checks
       << " value_checks=" << report.value_checks << " max_deviation=" << report.max_deviation
       << '\n';
  if (!report.passed) text << "counterexample: " << report.counterexample << '\n';
  write_output(o, text.str());
  return report.passed ? 0 : kExitCheckFailed;
}

int cmd_simulate(const Options& o) {
  if (o.algorithms.size() != 1) throw CliError(kExitError, "simulate takes exactly one --algo");
  require_pattern(o);
  if (o.samples < 1) throw CliError(kExitError, "--samples must be >= 1");
  const auto algo = parse_algorithm(o.algorithms.front());
  auto model = load_model(o);
  pd_analysis* raw_analysis = nullptr;
  check(pd_analysis_new(algo, o.pattern.c_str(), pd_model_alphabet(model.get()), &raw_analysis));
  AnalysisPtr analysis(raw_analysis);
  pd_dist* raw = nullptr;
  double mean = 0.0, se = 0.0;
  check(pd_dist_simulate(analysis.get(), model.get(), o.n, o.samples, o.seed, &raw, &mean, &se));
  DistPtr dist(raw);
  std::cerr << "samples " << o.samples << " seed " << o.seed << " empirical mean " << mean
            << " standard error " << se << '\n';
  int exit_code = 0;
  if (o.check_exact) {
    pd_dist* exact_raw = nullptr;
    check(pd_dist_cost(algo, o.pattern.c_str(), model.get(), o.n, o.state_cap, &exact_raw,
                       nullptr));
    DistPtr exact(exact_raw);
    const double exact_mean = stats_of(exact.get()).mean;
    const double z = se > 0.0 ? (mean - exact_mean) / se : (mean == exact_mean ? 0.0 : INFINITY);
    std::cerr << "exact mean " << exact_mean << " z-score " << z << '\n';
    if (!(std::abs(z) <= 4.0)) exit_code = kExitCheckFailed;
  }
  write_output(o, serialise(o, dist.get()));
  return exit_code;
}

int cmd_stats(const Options& o) {
  DistPtr dist;
  if (!o.input.empty()) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw CliError(kExitError, "IO_ERROR: cannot read " + o.input);
    std::ostringstream buf;
    buf << in.rdbuf();
    pd_dist* raw = nullptr;
    check(pd_dist_from_csv(buf.str().c_str(), &raw));
    dist.reset(raw);
  } else {
    if (o.algorithms.size() != 1) {
      throw CliError(kExitError, "stats needs --in <csv> or one --algo with a pattern");
    }
    const auto algo = parse_algorithm(o.algorithms.front());
    pd_dist* raw = nullptr;
    if (algo == PD_ALGO_KMP) {
      check(pd_dist_kmp(o.n, &raw));
    } else {
      require_pattern(o);
      auto model = load_model(o);
      check(pd_dist_cost(algo, o.pattern.c_str(), model.get(), o.n, o.state_cap, &raw, nullptr));
    }
    dist.reset(raw);
  }
  const double mass = pd_dist_total_mass(dist.get());
  if (std::abs(mass - 1.0) > 1e-9) {
    throw CliError(kExitCheckFailed, "pmf mass " + std::to_string(mass) + " differs from 1");
  }
  std::ostringstream text;
  print_stats(text, stats_of(dist.get()));
  write_output(o, text.str());
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--alphabet", o.alphabet, "Ordered alphabet symbols")
      ->each([&o](const std::string&) { o.alphabet_given = true; });
  cmd->add_option("--out", o.out, "Output path (default: standard output)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--state-cap", o.state_cap, "Maximum automaton states (0: default)");
  cmd->add_option("--threads", o.threads, "Worker threads");
}

void add_job(CLI::App* cmd, Options& o) {
  cmd->add_option("--algo", o.algorithms, "horspool | bdm | bndm | bom | kmp");
  cmd->add_option("--pattern", o.pattern, "Pattern over the alphabet");
  cmd->add_option("--n", o.n, "Text length");
  cmd->add_option("--iid", o.iid, "i.i.d. model: uniform or A=0.3,C=0.2,...");
  cmd->add_option("--markov", o.markov, "Markov model JSON file");
  cmd->add_option("--model", o.model_file, "General text model JSON file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character-access distributions of window-based pattern matchers"};
  app.require_subcommand(1);
  Options o;

  auto* dist = app.add_subcommand("dist", "Cost distribution of one algorithm");
  add_common(dist, o);
  add_job(dist, o);
  dist->add_flag("--certify", o.certify, "Recheck with exact rationals (n <= 20)");
  dist->add_option("--dump-daa", o.dump_daa, "Write the minimized DAA listing to a file");

  auto* compare = app.add_subcommand("compare", "Distribution of cost_A - cost_B");
  add_common(compare, o);
  add_job(compare, o);

  auto* sweep = app.add_subcommand("sweep", "Minimized DAA sizes over all patterns");
  add_common(sweep, o);
  sweep->add_option("--algo", o.algorithms, "Algorithms (default: all three)");
  sweep->add_option("--m", o.m_min, "Single pattern length")
      ->each([&o](const std::string& v) { o.m_max = o.m_min = std::stoi(v); });
  sweep->add_option("--m-min", o.m_min, "Smallest pattern length");
  sweep->add_option("--m-max", o.m_max, "Largest pattern length");
  sweep->add_flag("--allow-large", o.allow_large, "Permit m >= 6");

  auto* verify = app.add_subcommand("verify", "Exhaustive check against text enumeration");
  add_common(verify, o);
  verify->add_option("--max-m", o.max_m, "Largest pattern length");
  verify->add_option("--max-n", o.max_n, "Largest text length");
  verify->add_flag("--difference", o.difference, "Also check difference automata");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo cost distribution");
  add_common(simulate, o);
  add_job(simulate, o);
  simulate->add_option("--samples", o.samples, "Number of sampled texts");
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_flag("--check", o.check_exact, "Compare the mean with the exact mean");

  auto* stats = app.add_subcommand("stats", "Summary statistics of a distribution");
  add_common(stats, o);
  add_job(stats, o);
  stats->add_option("--in", o.input, "Read a value,probability CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*dist) return cmd_dist(o);
    if (*compare) return cmd_compare(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
    if (*stats) return cmd_stats(o);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
