// Copyright 2026 The patdist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PATDIST_ERROR_HPP
#define PATDIST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace patdist {

enum class ErrorCode {
  kInvalidArgument,
  kSumNotOne,
  kAlphabetMismatch,
  kStateCapExceeded,
  kIo,
  kParse,
  kInternal,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every fallible operation of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace patdist

#endif  // PATDIST_ERROR_HPP
