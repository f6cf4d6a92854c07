// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_ALPHABET_HPP
#define PATDIST_ALPHABET_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace patdist {

/// Dense symbol index in 0..|alphabet|-1.
using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kMaxAlphabetSize = 64;

/// Ordered set of distinct characters. A symbol is identified by its position.
class Alphabet {
 public:
  /// Throws Error(kInvalidArgument) if `symbols` is empty, longer than 64 or
  /// contains duplicates.
  explicit Alphabet(std::string_view symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbols() const noexcept { return symbols_; }
  char symbol(Symbol index) const { return symbols_.at(index); }
  std::optional<Symbol> index_of(char c) const noexcept;

  /// Bits needed to pack one symbol into a machine word (at least 1).
  unsigned bits_per_symbol() const noexcept;

  Word encode(std::string_view text) const;
  std::string decode(std::span<const Symbol> word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::string symbols_;
  std::array<std::int16_t, 256> lookup_{};
};

/// A pattern p = p[0..m-1] over an alphabet, m >= 1.
class Pattern {
 public:
  Pattern(Alphabet alphabet, Word symbols);
  Pattern(Alphabet alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::size_t length() const noexcept { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Word reversed() const;
  std::string to_string() const { return alphabet_.decode(symbols_); }

 private:
  Alphabet alphabet_;
  Word symbols_;
};

}  // namespace patdist

#endif  // PATDIST_ALPHABET_HPP
