// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#include "patdist/alphabet.hpp"

#include <algorithm>
#include <bit>

#include "patdist/error.hpp"

namespace patdist {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kSumNotOne: return "SUM_NOT_ONE";
    case ErrorCode::kAlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::kStateCapExceeded: return "STATE_CAP_EXCEEDED";
    case ErrorCode::kIo: return "IO_ERROR";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kInternal: return "INTERNAL_ERROR";
  }
  return "UNKNOWN";
}

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
  if (symbols_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "alphabet must not be empty");
  }
  if (symbols_.size() > kMaxAlphabetSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "alphabet has more than 64 symbols");
  }
  lookup_.fill(-1);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto key = static_cast<unsigned char>(symbols_[i]);
    if (lookup_[key] >= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("duplicate alphabet symbol '") + symbols_[i] +
                      "'");
    }
    lookup_[key] = static_cast<std::int16_t>(i);
  }
}

std::optional<Symbol> Alphabet::index_of(char c) const noexcept {
  auto v = lookup_[static_cast<unsigned char>(c)];
  if (v < 0) return std::nullopt;
  return static_cast<Symbol>(v);
}

unsigned Alphabet::bits_per_symbol() const noexcept {
  if (size() <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(size() - 1));
}

Word Alphabet::encode(std::string_view text) const {
  Word out;
  out.reserve(text.size());
  for (char c : text) {
    auto idx = index_of(c);
    if (!idx) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("symbol '") + c + "' is not in alphabet \"" +
                      symbols_ + "\"");
    }
    out.push_back(*idx);
  }
  return out;
}

std::string Alphabet::decode(std::span<const Symbol> word) const {
  std::string out;
  out.reserve(word.size());
  for (Symbol s : word) out.push_back(symbol(s));
  return out;
}

Pattern::Pattern(Alphabet alphabet, Word symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pattern must not be empty");
  }
  for (Symbol s : symbols_) {
    if (s >= alphabet_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pattern symbol index out of alphabet range");
    }
  }
}

Pattern::Pattern(Alphabet alphabet, std::string_view text)
    : Pattern(alphabet, alphabet.encode(text)) {}

Word Pattern::reversed() const {
  return Word(symbols_.rbegin(), symbols_.rend());
}

}  // namespace patdist
