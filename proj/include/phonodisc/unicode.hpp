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

#ifndef PHONODISC_UNICODE_HPP
#define PHONODISC_UNICODE_HPP

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonodisc/error.hpp"

namespace phonodisc::unicode {

/// Byte offset of the first ill-formed UTF-8 sequence, or nullopt.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::nullopt;
}

inline std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) {
      throw Error(ErrorKind::kEncoding, "malformed UTF-8");
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline std::string encode(char32_t cp) {
  std::uint8_t buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  UBool err = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), err);
  if (err) throw Error(ErrorKind::kEncoding, "codepoint not encodable");
  return std::string(reinterpret_cast<const char*>(buf),
                     static_cast<std::size_t>(n));
}

/// Canonical decomposition (NFD). Input must be valid UTF-8.
inline std::string nfd(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kEncoding, u_errorName(status));
  }
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<std::int32_t>(s.size())));
  if (norm->isNormalized(src, status) && U_SUCCESS(status)) {
    return std::string(s);
  }
  status = U_ZERO_ERROR;
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kEncoding, u_errorName(status));
  }
  std::string out;
  dst.toUTF8String(out);
  return out;
}

inline std::string hex(char32_t cp) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (int shift = 20; shift >= 0; shift -= 4) {
    const unsigned d = (cp >> shift) & 0xF;
    if (d == 0 && out.empty() && shift > 12) continue;
    out += kDigits[d];
  }
  return "U+" + out;
}

}  // namespace phonodisc::unicode

#endif  // PHONODISC_UNICODE_HPP
