// Copyright 2026 The phonodisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONODISC_ERROR_HPP
#define PHONODISC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace phonodisc {

// Failure categories. The CLI maps each one onto a process exit code.
enum class ErrorKind {
  kInvalidArgument,
  kEncoding,
  kParse,
  kNoBasePhone,
  kMissingUtterance,
  kUndefinedRate,
  kDegenerate,
  kInvalidDistribution,
  kTooFewLabels,
  kEmptyTranscript,
  kUnitMismatch,
  kInsufficientData,
  kUndefinedCorrelation,
  kUnknownSymbol,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a location. line and field are 1-based; 0 means n/a.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& msg, std::size_t line,
             std::size_t field = 0)
      : Error(kind, Format(msg, line, field)), line_(line), field_(field) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t field() const noexcept { return field_; }

 private:
  static std::string Format(const std::string& msg, std::size_t line,
                            std::size_t field) {
    std::string out = "line " + std::to_string(line);
    if (field > 0) out += ", field " + std::to_string(field);
    return out + ": " + msg;
  }

  std::size_t line_;
  std::size_t field_;
};

}  // namespace phonodisc

#endif  // PHONODISC_ERROR_HPP
