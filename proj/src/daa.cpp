// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/daa.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>

#include "patdist/error.hpp"

namespace patdist {

std::size_t default_state_cap() {
  if (const char* env = std::getenv("PATDIST_STATE_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultStateCap;
}

Daa::Daa(Alphabet alphabet, std::vector<State> transitions,
         std::vector<std::int64_t> emissions, State start, ValueDomain domain)
    : alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      emissions_(std::move(emissions)),
      start_(start),
      domain_(domain) {
  const auto n = emissions_.size();
  if (n == 0 || transitions_.size() != n * alphabet_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "DAA transition table size mismatch");
  }
  if (start_ < 0 || static_cast<std::size_t>(start_) >= n) {
    throw Error(ErrorCode::kInvalidArgument, "DAA start state out of range");
  }
  for (auto t : transitions_) {
    if (t < 0 || static_cast<std::size_t>(t) >= n) {
      throw Error(ErrorCode::kInvalidArgument, "DAA transition is not total");
    }
  }
}

std::uint64_t full_state_space_size(std::size_t alphabet_size, std::size_t m) {
  std::uint64_t n = m + 1;
  for (std::size_t i = 0; i < m; ++i) n *= alphabet_size;
  return n;
}

namespace {

// Label (w, x) packed as w * (m+1) + x; w holds the window with its oldest
// symbol in the highest bits.
class LabelIndex {
 public:
  LabelIndex(unsigned window_bits, std::size_t m) : stride_(m + 1) {
    const std::uint64_t dense = (std::uint64_t{1} << window_bits) * stride_;
    if (window_bits <= 24 && dense <= (std::uint64_t{1} << 26)) {
      dense_.assign(dense, -1);
    }
  }

  // Returns the state for a label, or -1 if unknown.
  std::int32_t find(std::uint64_t window, std::size_t x) const {
    const auto key = window * stride_ + x;
    if (!dense_.empty()) return dense_[key];
    auto it = sparse_.find(key);
    return it == sparse_.end() ? -1 : it->second;
  }

  void insert(std::uint64_t window, std::size_t x, std::int32_t state) {
    const auto key = window * stride_ + x;
    if (!dense_.empty()) {
      dense_[key] = state;
    } else {
      sparse_.emplace(key, state);
    }
  }

 private:
  std::uint64_t stride_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

}  // namespace

Daa build_cost_daa(const WindowAnalysis& analysis, std::size_t state_cap) {
  const auto& pattern = analysis.pattern();
  const auto& alphabet = pattern.alphabet();
  const auto sigma = alphabet.size();
  const auto m = pattern.length();
  const unsigned bits = alphabet.bits_per_symbol();
  if (bits * m > 64) {
    throw Error(ErrorCode::kInvalidArgument,
                "pattern too long to pack a window into 64 bits");
  }
  const unsigned window_bits = static_cast<unsigned>(bits * m);
  const std::uint64_t mask =
      window_bits == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << window_bits) - 1;

  struct Label {
    std::uint64_t window;
    std::size_t x;
  };
  std::vector<Label> labels;
  std::vector<Daa::State> transitions;
  std::vector<std::int64_t> emissions;
  LabelIndex index(window_bits, m);

  auto intern = [&](std::uint64_t window, std::size_t x) {
    auto s = index.find(window, x);
    if (s >= 0) return s;
    if (labels.size() >= state_cap) {
      throw Error(ErrorCode::kStateCapExceeded,
                  "cost DAA for pattern " + pattern.to_string() +
                      " exceeds the state cap of " + std::to_string(state_cap));
    }
    s = static_cast<Daa::State>(labels.size());
    labels.push_back({window, x});
    index.insert(window, x, s);
    return s;
  };

  std::uint64_t start_window = 0;
  for (Symbol a : pattern.symbols()) start_window = (start_window << bits) | a;
  intern(start_window, m);

  std::array<Symbol, 64> buffer{};
  const std::uint64_t symbol_mask = (std::uint64_t{1} << bits) - 1;
  for (std::size_t q = 0; q < labels.size(); ++q) {
    const auto [window, x] = labels[q];
    std::size_t next_x;
    if (x > 0) {
      emissions.push_back(0);
      next_x = x - 1;
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        buffer[i] = static_cast<Symbol>((window >> (bits * (m - 1 - i))) & symbol_mask);
      }
      const auto out = analysis.evaluate(std::span<const Symbol>(buffer.data(), m));
      if (out.shift < 1 || static_cast<std::size_t>(out.shift) > m) {
        throw Error(ErrorCode::kInternal, "window shift outside 1..m");
      }
      emissions.push_back(out.cost);
      next_x = static_cast<std::size_t>(out.shift) - 1;
    }
    for (std::size_t a = 0; a < sigma; ++a) {
      const auto w2 = ((window << bits) | a) & mask;
      transitions.push_back(intern(w2, next_x));
    }
  }
  return Daa(alphabet, std::move(transitions), std::move(emissions), 0,
             ValueDomain::kNatural);
}

std::int64_t daa_value(const Daa& daa, std::span<const Symbol> text) {
  auto q = daa.start();
  std::int64_t value = 0;
  for (Symbol a : text) {
    if (a >= daa.alphabet_size()) {
      throw Error(ErrorCode::kInvalidArgument, "text symbol outside DAA alphabet");
    }
    q = daa.next(q, a);
    value += daa.emission(q);
  }
  return value;
}

namespace {

// Refinable partition over states 0..n-1 (Valmari-Lehtinen layout): each
// block is a contiguous range of `elements`, marked states are moved to the
// front of their block.
class Partition {
 public:
  explicit Partition(std::size_t n)
      : elements_(n), location_(n), block_of_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      elements_[i] = static_cast<std::int32_t>(i);
      location_[i] = i;
    }
    first_.push_back(0);
    end_.push_back(n);
    marked_.push_back(0);
  }

  std::size_t block_count() const { return first_.size(); }
  std::size_t block_of(std::int32_t s) const { return block_of_[s]; }
  std::size_t size(std::size_t b) const { return end_[b] - first_[b]; }
  std::span<const std::int32_t> members(std::size_t b) const {
    return std::span<const std::int32_t>(elements_).subspan(first_[b], size(b));
  }

  void mark(std::int32_t s) {
    const auto b = block_of_[s];
    const auto i = location_[s];
    const auto j = first_[b] + marked_[b];
    if (i < j) return;
    std::swap(elements_[i], elements_[j]);
    location_[elements_[i]] = i;
    location_[elements_[j]] = j;
    if (marked_[b]++ == 0) touched_.push_back(b);
  }

  // Splits every touched block into marked / unmarked parts. Calls
  // on_split(old_block, new_block) for each proper split; the new block is
  // the smaller part.
  template <typename F>
  void split_marked(F&& on_split) {
    for (auto b : touched_) {
      const auto k = marked_[b];
      marked_[b] = 0;
      if (k == size(b)) continue;
      const auto nb = first_.size();
      if (k <= size(b) - k) {
        first_.push_back(first_[b]);
        end_.push_back(first_[b] + k);
        first_[b] += k;
      } else {
        first_.push_back(first_[b] + k);
        end_.push_back(end_[b]);
        end_[b] = first_[b] + k;
      }
      marked_.push_back(0);
      for (auto i = first_[nb]; i < end_[nb]; ++i) block_of_[elements_[i]] = nb;
      on_split(b, nb);
    }
    touched_.clear();
  }

 private:
  std::vector<std::int32_t> elements_;
  std::vector<std::size_t> location_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> first_, end_, marked_;
  std::vector<std::size_t> touched_;
};

}  // namespace

Daa minimize_daa(const Daa& daa) {
  const auto n = daa.state_count();
  const auto sigma = daa.alphabet_size();

  // Inverse transitions grouped by (symbol, target).
  std::vector<std::size_t> pred_start(n * sigma + 1, 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < sigma; ++a) {
      const auto t = daa.next(static_cast<Daa::State>(q), static_cast<Symbol>(a));
      ++pred_start[a * n + static_cast<std::size_t>(t) + 1];
    }
  }
  for (std::size_t i = 1; i < pred_start.size(); ++i) pred_start[i] += pred_start[i - 1];
  std::vector<std::int32_t> preds(n * sigma);
  {
    auto fill = pred_start;
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t a = 0; a < sigma; ++a) {
        const auto t = daa.next(static_cast<Daa::State>(q), static_cast<Symbol>(a));
        preds[fill[a * n + static_cast<std::size_t>(t)]++] = static_cast<std::int32_t>(q);
      }
    }
  }

  // Initial partition: one block per distinct emission.
  Partition partition(n);
  {
    std::vector<std::int64_t> distinct(daa.emissions().begin(), daa.emissions().end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t k = 1; k < distinct.size(); ++k) {
      for (std::size_t q = 0; q < n; ++q) {
        if (daa.emission(static_cast<Daa::State>(q)) == distinct[k]) {
          partition.mark(static_cast<std::int32_t>(q));
        }
      }
      partition.split_marked([](std::size_t, std::size_t) {});
    }
  }

  // Splitter worklist of (block, symbol); all initial blocks are enqueued.
  std::deque<std::pair<std::size_t, std::size_t>> work;
  std::vector<std::vector<char>> queued;
  auto enqueue = [&](std::size_t b, std::size_t a) {
    if (queued.size() <= b) queued.resize(b + 1, std::vector<char>(sigma, 0));
    if (!queued[b][a]) {
      queued[b][a] = 1;
      work.emplace_back(b, a);
    }
  };
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    for (std::size_t a = 0; a < sigma; ++a) enqueue(b, a);
  }

  std::vector<std::int32_t> splitter;
  while (!work.empty()) {
    const auto [b, a] = work.front();
    work.pop_front();
    queued[b][a] = 0;
    // Copy: marking reorders elements inside the splitter block itself.
    auto members = partition.members(b);
    splitter.assign(members.begin(), members.end());
    for (auto t : splitter) {
      const auto key = a * n + static_cast<std::size_t>(t);
      for (auto i = pred_start[key]; i < pred_start[key + 1]; ++i) {
        partition.mark(preds[i]);
      }
    }
    partition.split_marked([&](std::size_t old_block, std::size_t new_block) {
      if (queued.size() <= new_block) {
        queued.resize(new_block + 1, std::vector<char>(sigma, 0));
      }
      for (std::size_t c = 0; c < sigma; ++c) {
        // Hopcroft: if the old block is pending it stays pending and the new
        // part must be added too; otherwise the smaller part suffices.
        if (queued[old_block][c]) {
          enqueue(new_block, c);
        } else {
          enqueue(partition.size(new_block) <= partition.size(old_block)
                      ? new_block
                      : old_block,
                  c);
        }
      }
    });
  }

  // Renumber blocks in BFS order from the start block.
  const auto blocks = partition.block_count();
  std::vector<std::int32_t> order(blocks, -1);
  std::vector<std::size_t> bfs;
  bfs.push_back(partition.block_of(daa.start()));
  order[bfs.front()] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    const auto rep = partition.members(bfs[i]).front();
    for (std::size_t a = 0; a < sigma; ++a) {
      const auto tb = partition.block_of(daa.next(rep, static_cast<Symbol>(a)));
      if (order[tb] < 0) {
        order[tb] = static_cast<std::int32_t>(bfs.size());
        bfs.push_back(tb);
      }
    }
  }
  std::vector<Daa::State> transitions(bfs.size() * sigma);
  std::vector<std::int64_t> emissions(bfs.size());
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    const auto rep = partition.members(bfs[i]).front();
    emissions[i] = daa.emission(rep);
    for (std::size_t a = 0; a < sigma; ++a) {
      transitions[i * sigma + a] =
          order[partition.block_of(daa.next(rep, static_cast<Symbol>(a)))];
    }
  }
  return Daa(daa.alphabet(), std::move(transitions), std::move(emissions), 0,
             daa.domain());
}

void write_daa_dump(std::ostream& out, const Daa& daa) {
  out << "daa states " << daa.state_count() << " alphabet "
      << daa.alphabet().symbols() << " start " << daa.start() << " domain "
      << (daa.domain() == ValueDomain::kNatural ? "N" : "Z") << '\n';
  for (std::size_t q = 0; q < daa.state_count(); ++q) {
    out << "state " << q << ' ' << daa.emission(static_cast<Daa::State>(q)) << '\n';
  }
  for (std::size_t q = 0; q < daa.state_count(); ++q) {
    for (std::size_t a = 0; a < daa.alphabet_size(); ++a) {
      out << "edge " << q << ' ' << daa.alphabet().symbol(static_cast<Symbol>(a))
          << ' ' << daa.next(static_cast<Daa::State>(q), static_cast<Symbol>(a))
          << '\n';
    }
  }
}

}  // namespace patdist
