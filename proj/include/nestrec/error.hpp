// Copyright 2026 The nestrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NESTREC_ERROR_HPP_
#define NESTREC_ERROR_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace nestrec {

enum class ErrorCode {
  kArgument,
  kOverflow,
  kValidation,
  kNoTreeKnown,
  kPrecondition,
  kParse,
  kIo,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto nr_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

namespace arith {

inline std::int64_t Add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    Fail(ErrorCode::kOverflow, "64-bit overflow in addition");
  }
  return out;
}

inline std::int64_t Sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    Fail(ErrorCode::kOverflow, "64-bit overflow in subtraction");
  }
  return out;
}

inline std::int64_t Mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    Fail(ErrorCode::kOverflow, "64-bit overflow in multiplication");
  }
  return out;
}

}  // namespace arith
}  // namespace nestrec

#endif  // NESTREC_ERROR_HPP_
