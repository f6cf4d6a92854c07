// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/textmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "patdist/error.hpp"

namespace patdist {

namespace {

std::string display(const std::string& name) {
  return name.empty() ? std::string("''") : name;
}

std::vector<char> reachable_contexts(std::size_t count, std::int32_t start,
                                     std::span<const ModelTransition> ts) {
  std::vector<std::vector<std::int32_t>> adj(count);
  for (const auto& t : ts) {
    if (t.prob > 0.0) adj[t.from].push_back(t.to);
  }
  std::vector<char> seen(count, 0);
  std::vector<std::int32_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto d : adj[c]) {
      if (!seen[d]) {
        seen[d] = 1;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

}  // namespace

std::string ModelDiagnostics::describe() const {
  std::ostringstream out;
  out.precision(12);
  for (const auto& s : structural) out << "error: " << s << '\n';
  for (const auto& r : residuals) {
    out << "error: context " << display(r.context)
        << " outgoing mass differs from 1 by " << r.residual << '\n';
  }
  for (const auto& c : dead) {
    out << "error: context " << display(c) << " has no outgoing mass\n";
  }
  for (const auto& s : out_of_range) out << "error: " << s << '\n';
  for (const auto& c : unreachable) {
    out << "warning: context " << display(c)
        << " is unreachable from the start context\n";
  }
  return out.str();
}

ModelDiagnostics validate(const TextModelSpec& spec) {
  ModelDiagnostics d;
  const auto n = spec.contexts.size();
  if (n == 0) {
    d.structural.push_back("model has no contexts");
    return d;
  }
  {
    auto names = spec.contexts;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
      d.structural.push_back("context names are not unique");
    }
  }
  if (spec.start < 0 || static_cast<std::size_t>(spec.start) >= n) {
    d.structural.push_back("start context out of range");
    return d;
  }
  std::vector<double> mass(n, 0.0);
  bool indices_ok = true;
  for (const auto& t : spec.transitions) {
    if (t.from < 0 || static_cast<std::size_t>(t.from) >= n || t.to < 0 ||
        static_cast<std::size_t>(t.to) >= n ||
        t.symbol >= spec.alphabet.size()) {
      d.structural.push_back("transition refers to an unknown context or symbol");
      indices_ok = false;
      continue;
    }
    if (!(t.prob >= 0.0 && t.prob <= 1.0)) {
      std::ostringstream msg;
      msg << "probability " << t.prob << " outside [0,1] on "
          << display(spec.contexts[t.from]) << " --"
          << spec.alphabet.symbol(t.symbol) << "--> "
          << display(spec.contexts[t.to]);
      d.out_of_range.push_back(msg.str());
      continue;
    }
    mass[t.from] += t.prob;
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (mass[c] == 0.0) {
      d.dead.push_back(spec.contexts[c]);
    } else if (std::abs(1.0 - mass[c]) > kStochasticTolerance) {
      d.residuals.push_back({spec.contexts[c], 1.0 - mass[c]});
    }
  }
  if (indices_ok) {
    auto seen = reachable_contexts(n, spec.start, spec.transitions);
    for (std::size_t c = 0; c < n; ++c) {
      if (!seen[c]) d.unreachable.push_back(spec.contexts[c]);
    }
  }
  return d;
}

TextModel::TextModel(TextModelSpec spec, std::string label)
    : alphabet_(spec.alphabet), label_(std::move(label)) {
  const auto diag = validate(spec);
  if (!diag.ok()) {
    const bool normalisation = !diag.residuals.empty() && diag.structural.empty() &&
                               diag.out_of_range.empty() && diag.dead.empty();
    throw Error(normalisation ? ErrorCode::kSumNotOne : ErrorCode::kInvalidArgument,
                "invalid text model:\n" + diag.describe());
  }
  for (const auto& c : diag.unreachable) {
    warnings_.push_back("pruned unreachable context " + display(c));
  }

  // Keep reachable contexts, merge duplicate entries, drop zeros.
  const auto seen = reachable_contexts(spec.contexts.size(), spec.start,
                                       spec.transitions);
  std::vector<std::int32_t> remap(spec.contexts.size(), -1);
  for (std::size_t c = 0; c < spec.contexts.size(); ++c) {
    if (seen[c]) {
      remap[c] = static_cast<std::int32_t>(names_.size());
      names_.push_back(spec.contexts[c]);
    }
  }
  start_ = remap[spec.start];
  for (const auto& t : spec.transitions) {
    if (t.prob > 0.0 && seen[t.from]) {
      transitions_.push_back({remap[t.from], t.symbol, remap[t.to], t.prob});
    }
  }
  std::sort(transitions_.begin(), transitions_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.symbol, a.to) < std::tie(b.from, b.symbol, b.to);
  });
  std::vector<ModelTransition> merged;
  for (const auto& t : transitions_) {
    if (!merged.empty() && merged.back().from == t.from &&
        merged.back().symbol == t.symbol && merged.back().to == t.to) {
      merged.back().prob += t.prob;
    } else {
      merged.push_back(t);
    }
  }
  transitions_ = std::move(merged);
  // Rows are stochastic within tolerance; make them exact up to rounding.
  {
    std::vector<double> row_mass(names_.size(), 0.0);
    for (const auto& t : transitions_) row_mass[t.from] += t.prob;
    for (auto& t : transitions_) t.prob /= row_mass[t.from];
  }

  offsets_.assign(names_.size() + 1, 0);
  for (const auto& t : transitions_) ++offsets_[static_cast<std::size_t>(t.from) + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

  const auto sigma = alphabet_.size();
  deterministic_ = true;
  step_target_.assign(names_.size() * sigma, -1);
  step_prob_.assign(names_.size() * sigma, 0.0);
  for (const auto& t : transitions_) {
    const auto key = static_cast<std::size_t>(t.from) * sigma + t.symbol;
    if (step_target_[key] >= 0) deterministic_ = false;
    step_target_[key] = t.to;
    step_prob_[key] = t.prob;
  }
  if (!deterministic_) {
    step_target_.clear();
    step_prob_.clear();
  }
}

std::span<const ModelTransition> TextModel::outgoing(std::int32_t c) const {
  const auto i = static_cast<std::size_t>(c);
  return std::span<const ModelTransition>(transitions_)
      .subspan(offsets_.at(i), offsets_.at(i + 1) - offsets_[i]);
}

std::pair<std::int32_t, double> TextModel::step(std::int32_t c, Symbol a) const {
  if (!deterministic_) {
    throw Error(ErrorCode::kInvalidArgument,
                "step() requires a deterministic-context model");
  }
  const auto key = static_cast<std::size_t>(c) * alphabet_.size() + a;
  return {step_target_.at(key), step_prob_[key]};
}

TextModelSpec TextModel::spec() const {
  return TextModelSpec{alphabet_, names_, start_, transitions_};
}

TextModel iid_model(const Alphabet& alphabet, std::span<const double> probs) {
  if (probs.size() != alphabet.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "i.i.d. model needs one probability per symbol");
  }
  TextModelSpec spec{alphabet, {""}, 0, {}};
  double sum = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    spec.transitions.push_back({0, static_cast<Symbol>(a), 0, probs[a]});
    sum += probs[a];
  }
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "i.i.d. probabilities sum to " << sum;
    throw Error(ErrorCode::kSumNotOne, msg.str());
  }
  std::ostringstream label;
  label << "iid(";
  for (std::size_t a = 0; a < probs.size(); ++a) {
    label << (a ? "," : "") << alphabet.symbol(static_cast<Symbol>(a)) << '='
          << probs[a];
  }
  label << ')';
  return TextModel(std::move(spec), label.str());
}

TextModel uniform_model(const Alphabet& alphabet) {
  std::vector<double> probs(alphabet.size(), 1.0 / static_cast<double>(alphabet.size()));
  TextModel model = iid_model(alphabet, probs);
  auto spec = model.spec();
  return TextModel(std::move(spec), "iid(uniform)");
}

TextModel markov_model(const Alphabet& alphabet, int order,
                       const std::map<std::string, std::vector<double>>& next_symbol) {
  if (order < 0) throw Error(ErrorCode::kInvalidArgument, "negative Markov order");
  const auto sigma = alphabet.size();
  std::size_t total = 0;
  for (std::size_t len = 0, count = 1; len <= static_cast<std::size_t>(order);
       ++len, count *= sigma) {
    total += count;
    if (total > 1'000'000) {
      throw Error(ErrorCode::kInvalidArgument, "Markov order too large");
    }
  }

  TextModelSpec spec{alphabet, {}, 0, {}};
  std::unordered_map<std::string, std::int32_t> id;
  std::vector<std::string> frontier{""};
  for (int len = 0; len <= order; ++len) {
    std::vector<std::string> next;
    for (const auto& c : frontier) {
      id.emplace(c, static_cast<std::int32_t>(spec.contexts.size()));
      spec.contexts.push_back(c);
      for (std::size_t a = 0; a < sigma; ++a) next.push_back(c + alphabet.symbol(static_cast<Symbol>(a)));
    }
    frontier = std::move(next);
  }

  std::vector<std::string> bad_sums;
  for (const auto& c : spec.contexts) {
    auto it = next_symbol.find(c);
    if (it == next_symbol.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "missing next-symbol distribution for context " + display(c));
    }
    if (it->second.size() != sigma) {
      throw Error(ErrorCode::kInvalidArgument,
                  "distribution for context " + display(c) +
                      " needs one probability per symbol");
    }
    double sum = 0.0;
    for (std::size_t a = 0; a < sigma; ++a) {
      std::string succ = c + alphabet.symbol(static_cast<Symbol>(a));
      if (succ.size() > static_cast<std::size_t>(order)) succ.erase(0, 1);
      spec.transitions.push_back(
          {id.at(c), static_cast<Symbol>(a), id.at(succ), it->second[a]});
      sum += it->second[a];
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) bad_sums.push_back(display(c));
  }
  for (const auto& [c, _] : next_symbol) {
    if (!id.count(c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "distribution given for unknown context " + display(c));
    }
  }
  if (!bad_sums.empty()) {
    std::string msg = "next-symbol distribution does not sum to 1 for context(s):";
    for (const auto& c : bad_sums) msg += " " + c;
    throw Error(ErrorCode::kSumNotOne, msg);
  }
  return TextModel(std::move(spec), "markov" + std::to_string(order));
}

ForwardState::ForwardState(const TextModel& model)
    : model_(&model), mass_(model.context_count(), 0.0),
      scratch_(model.context_count(), 0.0) {
  mass_[model.start()] = 1.0;
}

void ForwardState::advance(Symbol a) {
  std::fill(scratch_.begin(), scratch_.end(), 0.0);
  for (std::size_t c = 0; c < mass_.size(); ++c) {
    if (mass_[c] == 0.0) continue;
    for (const auto& t : model_->outgoing(static_cast<std::int32_t>(c))) {
      if (t.symbol == a) scratch_[t.to] += mass_[c] * t.prob;
    }
  }
  mass_.swap(scratch_);
}

double ForwardState::mass() const {
  double sum = 0.0;
  for (double v : mass_) sum += v;
  return sum;
}

double string_probability(const TextModel& model, std::span<const Symbol> s) {
  ForwardState state(model);
  for (Symbol a : s) {
    if (a >= model.alphabet().size()) {
      throw Error(ErrorCode::kInvalidArgument, "symbol outside model alphabet");
    }
    state.advance(a);
  }
  return state.mass();
}

namespace {

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TextModel load_model_json(std::string_view json_text, std::string label) {
  const auto j = parse_json(json_text);
  try {
    Alphabet alphabet(j.at("alphabet").get<std::string>());
    TextModelSpec spec{alphabet, j.at("contexts").get<std::vector<std::string>>(), 0, {}};
    std::unordered_map<std::string, std::int32_t> id;
    for (std::size_t i = 0; i < spec.contexts.size(); ++i) {
      id.emplace(spec.contexts[i], static_cast<std::int32_t>(i));
    }
    auto lookup = [&](const std::string& name) {
      auto it = id.find(name);
      if (it == id.end()) {
        throw Error(ErrorCode::kParse, "unknown context '" + name + "'");
      }
      return it->second;
    };
    spec.start = lookup(j.at("start").get<std::string>());
    for (const auto& t : j.at("transitions")) {
      const auto sym = t.at("symbol").get<std::string>();
      if (sym.size() != 1 || !alphabet.index_of(sym[0])) {
        throw Error(ErrorCode::kParse, "bad transition symbol '" + sym + "'");
      }
      spec.transitions.push_back({lookup(t.at("from").get<std::string>()),
                                  *alphabet.index_of(sym[0]),
                                  lookup(t.at("to").get<std::string>()),
                                  t.at("prob").get<double>()});
    }
    return TextModel(std::move(spec), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad model file: ") + e.what());
  }
}

TextModel load_model_file(const std::string& path) {
  return load_model_json(read_file(path), path);
}

TextModel load_markov_json(std::string_view json_text, std::string label) {
  const auto j = parse_json(json_text);
  try {
    Alphabet alphabet(j.at("alphabet").get<std::string>());
    const int order = j.at("order").get<int>();
    std::map<std::string, std::vector<double>> dists;
    for (const auto& [ctx, probs] : j.at("distributions").items()) {
      dists[ctx] = probs.get<std::vector<double>>();
    }
    auto model = markov_model(alphabet, order, dists);
    return TextModel(model.spec(), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad Markov file: ") + e.what());
  }
}

TextModel load_markov_file(const std::string& path) {
  return load_markov_json(read_file(path), path);
}

TextModel parse_iid_spec(const Alphabet& alphabet, std::string_view spec) {
  if (spec == "uniform") return uniform_model(alphabet);
  std::vector<double> probs(alphabet.size(), 0.0);
  std::vector<char> given(alphabet.size(), 0);
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const auto item = spec.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq != 1 || !alphabet.index_of(item[0])) {
      throw Error(ErrorCode::kParse,
                  "expected SYMBOL=PROB in i.i.d. spec, got '" + std::string(item) + "'");
    }
    const auto a = *alphabet.index_of(item[0]);
    if (given[a]) {
      throw Error(ErrorCode::kParse, std::string("symbol given twice: ") + item[0]);
    }
    given[a] = 1;
    try {
      std::size_t used = 0;
      const std::string number(item.substr(2));
      probs[a] = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad probability in '" + std::string(item) + "'");
    }
    pos = end + 1;
  }
  return iid_model(alphabet, probs);
}

}  // namespace patdist
