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

// IPA symbol classification, phone tokenization and transcript parsing.
//
// A phone is one whitespace-delimited field of a transcript, e.g. "a˨˩˦".
// Its phone tokens are the single IPA symbols it is written with: the text is
// brought to NFD and split per codepoint, so combining marks and precomposed
// letters that have a canonical decomposition become separate tokens while
// letters without one (ɛ, ʃ, ŋ...) stay whole.

#ifndef PHONODISC_IPA_HPP
#define PHONODISC_IPA_HPP

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "phonodisc/csv.hpp"
#include "phonodisc/error.hpp"
#include "phonodisc/unicode.hpp"

namespace phonodisc {

enum class SymbolClass { kBase, kTone, kDiacritic, kStress, kLength, kTie };

inline std::string_view to_string(SymbolClass c) {
  switch (c) {
    case SymbolClass::kBase: return "base";
    case SymbolClass::kTone: return "tone";
    case SymbolClass::kDiacritic: return "diacritic";
    case SymbolClass::kStress: return "stress";
    case SymbolClass::kLength: return "length";
    case SymbolClass::kTie: return "tie";
  }
  return "base";
}

inline std::optional<SymbolClass> symbol_class_from_string(std::string_view s) {
  for (auto c : {SymbolClass::kBase, SymbolClass::kTone, SymbolClass::kDiacritic,
                 SymbolClass::kStress, SymbolClass::kLength, SymbolClass::kTie}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

struct CodepointRange {
  char32_t first;
  char32_t last;
  SymbolClass cls;
};

inline constexpr int kSymbolTableVersion = 1;

// First matching range wins, so the specific modifier ranges come before the
// broad blocks that contain them.
inline constexpr CodepointRange kBuiltinSymbolClasses[] = {
    // tie bars and the undertie linker
    {0x035C, 0x035C, SymbolClass::kTie},
    {0x0361, 0x0361, SymbolClass::kTie},
    {0x203F, 0x203F, SymbolClass::kTie},
    // Chao tone letters and their extensions
    {0x02E5, 0x02E9, SymbolClass::kTone},
    {0x02EA, 0x02EB, SymbolClass::kTone},
    {0xA700, 0xA71F, SymbolClass::kTone},
    {0x02C8, 0x02C8, SymbolClass::kStress},
    {0x02CC, 0x02CC, SymbolClass::kStress},
    {0x02D0, 0x02D1, SymbolClass::kLength},
    // combining diacritical marks (+ supplement, + symbols)
    {0x0300, 0x036F, SymbolClass::kDiacritic},
    {0x1DC0, 0x1DFF, SymbolClass::kDiacritic},
    {0x20D0, 0x20FF, SymbolClass::kDiacritic},
    // spacing modifier letters: ʰ ʷ ʲ ˠ ˤ ʼ ˞ ...
    {0x02B0, 0x02FF, SymbolClass::kDiacritic},
    {0x1D2C, 0x1D6A, SymbolClass::kDiacritic},
    {0x1D9B, 0x1DBF, SymbolClass::kDiacritic},
    {0x2070, 0x209F, SymbolClass::kDiacritic},
    // ASCII apostrophe as an ejective mark
    {0x0027, 0x0027, SymbolClass::kDiacritic},
    // segmental letters
    {0x0041, 0x005A, SymbolClass::kBase},
    {0x0061, 0x007A, SymbolClass::kBase},
    {0x00C0, 0x00D6, SymbolClass::kBase},
    {0x00D8, 0x00F6, SymbolClass::kBase},
    {0x00F8, 0x024F, SymbolClass::kBase},
    {0x0250, 0x02AF, SymbolClass::kBase},
    {0x0370, 0x03FF, SymbolClass::kBase},
    {0x1D00, 0x1D2B, SymbolClass::kBase},
    {0x1D6B, 0x1D9A, SymbolClass::kBase},
    {0x1E00, 0x1EFF, SymbolClass::kBase},
    {0x2C60, 0x2C7F, SymbolClass::kBase},
    {0xA720, 0xA7FF, SymbolClass::kBase},
};

using WarningSink = std::function<void(const std::string&)>;

/// Codepoint -> class lookup: the built-in ranges plus per-codepoint
/// overrides, which take precedence.
class SymbolClassTable {
 public:
  SymbolClassTable() = default;

  static const SymbolClassTable& builtin() {
    static const SymbolClassTable table = [] {
      SymbolClassTable t;
      t.ranges_.assign(std::begin(kBuiltinSymbolClasses),
                       std::end(kBuiltinSymbolClasses));
      return t;
    }();
    return table;
  }

  /// Reads "codepoint_hex,class" rows on top of the built-in table.
  static SymbolClassTable from_csv(std::istream& in) {
    SymbolClassTable t = builtin();
    const csv::Table rows = csv::read_table(in);
    const auto cp_col = rows.column("codepoint_hex");
    const auto cls_col = rows.column("class");
    if (cp_col == csv::Table::npos || cls_col == csv::Table::npos) {
      throw ParseError(ErrorKind::kParse,
                       "symbol table header must be codepoint_hex,class", 1);
    }
    for (std::size_t i = 0; i < rows.rows.size(); ++i) {
      std::string hex = rows.rows[i][cp_col];
      if (hex.rfind("U+", 0) == 0 || hex.rfind("0x", 0) == 0) hex = hex.substr(2);
      char32_t cp = 0;
      try {
        std::size_t used = 0;
        cp = static_cast<char32_t>(std::stoul(hex, &used, 16));
        if (used != hex.size()) throw std::invalid_argument(hex);
      } catch (const std::exception&) {
        throw ParseError(ErrorKind::kParse, "bad codepoint '" + hex + "'", i + 2, 1);
      }
      auto cls = symbol_class_from_string(rows.rows[i][cls_col]);
      if (!cls) {
        throw ParseError(ErrorKind::kParse,
                         "unknown class '" + rows.rows[i][cls_col] + "'", i + 2, 2);
      }
      t.overrides_[cp] = *cls;
    }
    return t;
  }

  void set(char32_t cp, SymbolClass cls) { overrides_[cp] = cls; }

  std::optional<SymbolClass> lookup(char32_t cp) const {
    if (auto it = overrides_.find(cp); it != overrides_.end()) return it->second;
    for (const auto& r : ranges_) {
      if (cp >= r.first && cp <= r.last) return r.cls;
    }
    return std::nullopt;
  }

 private:
  std::vector<CodepointRange> ranges_;
  std::map<char32_t, SymbolClass> overrides_;
};

/// Class of one grapheme. A grapheme holding any base codepoint is base;
/// otherwise its first codepoint decides. Unknown codepoints count as base
/// and are reported to `warn`.
inline SymbolClass classify_symbol(std::string_view grapheme,
                                   const SymbolClassTable& table = SymbolClassTable::builtin(),
                                   const WarningSink& warn = {}) {
  if (grapheme.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "classify_symbol: empty grapheme");
  }
  const auto cps = unicode::decode(grapheme);
  std::optional<SymbolClass> first;
  for (char32_t cp : cps) {
    auto cls = table.lookup(cp);
    if (!cls) {
      if (warn) {
        warn("unknown codepoint " + unicode::hex(cp) + " classified as base");
      }
      cls = SymbolClass::kBase;
    }
    if (*cls == SymbolClass::kBase) return SymbolClass::kBase;
    if (!first) first = cls;
  }
  return *first;
}

struct PhoneToken {
  std::string text;
  SymbolClass cls = SymbolClass::kBase;

  bool operator==(const PhoneToken& o) const { return text == o.text; }
  bool operator<(const PhoneToken& o) const { return text < o.text; }
};

class Phone {
 public:
  Phone() = default;
  explicit Phone(std::vector<PhoneToken> tokens) : tokens_(std::move(tokens)) {
    for (const auto& t : tokens_) text_ += t.text;
  }

  const std::vector<PhoneToken>& tokens() const { return tokens_; }
  const std::string& text() const { return text_; }

  bool operator==(const Phone& o) const { return text_ == o.text_; }
  bool operator<(const Phone& o) const { return text_ < o.text_; }

 private:
  std::vector<PhoneToken> tokens_;
  std::string text_;
};

/// Splits one phone into tokens. Throws kNoBasePhone for modifier-only text.
inline Phone tokenize_phone(std::string_view text,
                            const SymbolClassTable& table = SymbolClassTable::builtin(),
                            const WarningSink& warn = {}) {
  if (text.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "tokenize_phone: empty phone");
  }
  if (unicode::find_invalid_utf8(text)) {
    throw Error(ErrorKind::kEncoding, "tokenize_phone: malformed UTF-8");
  }
  const std::string normalized = unicode::nfd(text);
  std::vector<PhoneToken> tokens;
  bool has_base = false;
  for (char32_t cp : unicode::decode(normalized)) {
    PhoneToken tok;
    tok.text = unicode::encode(cp);
    tok.cls = classify_symbol(tok.text, table, warn);
    has_base = has_base || tok.cls == SymbolClass::kBase;
    tokens.push_back(std::move(tok));
  }
  if (!has_base) {
    throw Error(ErrorKind::kNoBasePhone,
                "phone '" + std::string(text) + "' has no base symbol");
  }
  return Phone(std::move(tokens));
}

inline std::vector<PhoneToken> phones_to_tokens(const std::vector<Phone>& phones) {
  std::vector<PhoneToken> out;
  for (const auto& p : phones) {
    out.insert(out.end(), p.tokens().begin(), p.tokens().end());
  }
  return out;
}

struct Utterance {
  std::string id;
  std::vector<Phone> phones;
};

struct Transcript {
  std::string language;
  std::vector<Utterance> utterances;

  std::size_t phone_count() const {
    std::size_t n = 0;
    for (const auto& u : utterances) n += u.phones.size();
    return n;
  }
  bool empty() const { return phone_count() == 0; }
};

namespace detail {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_blank(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_blank(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// One utterance per non-blank line: an optional "id<TAB>" prefix (the 1-based
/// line number otherwise) followed by space-separated phones.
inline Transcript parse_transcript(std::string_view text, std::string language,
                                   const SymbolClassTable& table = SymbolClassTable::builtin(),
                                   const WarningSink& warn = {}) {
  Transcript t;
  t.language = std::move(language);
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto bad = unicode::find_invalid_utf8(line)) {
      throw ParseError(ErrorKind::kEncoding,
                       "malformed UTF-8 at byte " + std::to_string(*bad), line_no);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::all_of(line.begin(), line.end(), detail::is_blank)) continue;

    Utterance utt;
    std::string_view body = line;
    if (auto tab = line.find('\t'); tab != std::string_view::npos) {
      utt.id = std::string(line.substr(0, tab));
      body = line.substr(tab + 1);
    } else {
      utt.id = std::to_string(line_no);
    }
    if (!seen.insert(utt.id).second) {
      throw ParseError(ErrorKind::kParse, "duplicate utterance id '" + utt.id + "'",
                       line_no);
    }
    const auto fields = detail::split_fields(body);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      try {
        utt.phones.push_back(tokenize_phone(fields[f], table, warn));
      } catch (const Error& e) {
        throw ParseError(e.kind() == ErrorKind::kEncoding ? ErrorKind::kEncoding
                                                          : ErrorKind::kParse,
                         e.what(), line_no, f + 1);
      }
    }
    t.utterances.push_back(std::move(utt));
  }
  return t;
}

inline Transcript parse_transcript(std::istream& in, std::string language,
                                   const SymbolClassTable& table = SymbolClassTable::builtin(),
                                   const WarningSink& warn = {}) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_transcript(buf.str(), std::move(language), table, warn);
}

/// Serializes with explicit ids, so utterances with no phones survive.
inline std::string format_transcript(const Transcript& t) {
  std::string out;
  for (const auto& u : t.utterances) {
    out += u.id;
    out += '\t';
    for (std::size_t i = 0; i < u.phones.size(); ++i) {
      if (i) out += ' ';
      out += u.phones[i].text();
    }
    out += '\n';
  }
  return out;
}

/// Granularity at which transcripts are compared and inventories are built.
enum class Unit { kPhone, kPhoneToken };

inline std::string_view to_string(Unit u) {
  return u == Unit::kPhone ? "phone" : "phone-token";
}

inline std::optional<Unit> unit_from_string(std::string_view s) {
  if (s == "phone") return Unit::kPhone;
  if (s == "phone-token" || s == "token") return Unit::kPhoneToken;
  return std::nullopt;
}

/// Symbol texts of an utterance at the requested unit.
inline std::vector<std::string> symbols(const std::vector<Phone>& phones, Unit unit) {
  std::vector<std::string> out;
  if (unit == Unit::kPhone) {
    out.reserve(phones.size());
    for (const auto& p : phones) out.push_back(p.text());
  } else {
    for (const auto& t : phones_to_tokens(phones)) out.push_back(t.text);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Articulatory features

struct VowelFeatures {
  std::string height;
  std::string backness;
  std::string roundness;
};

struct ConsonantFeatures {
  std::string manner;
  std::string place;
  std::string voicing;
};

struct FeatureEntry {
  std::optional<VowelFeatures> vowel;
  std::optional<ConsonantFeatures> consonant;

  bool is_vowel() const { return vowel.has_value(); }

  // Value on a named axis, or empty when the axis does not apply.
  std::string axis(std::string_view name) const {
    if (vowel) {
      if (name == "height") return vowel->height;
      if (name == "backness") return vowel->backness;
      if (name == "roundness") return vowel->roundness;
    } else if (consonant) {
      if (name == "manner") return consonant->manner;
      if (name == "place") return consonant->place;
      if (name == "voicing") return consonant->voicing;
    }
    return {};
  }
};

inline constexpr std::string_view kVowelAxes[] = {"backness", "height", "roundness"};
inline constexpr std::string_view kConsonantAxes[] = {"manner", "place", "voicing"};

class FeatureTable {
 public:
  static FeatureTable from_csv(std::istream& in) {
    const csv::Table t = csv::read_table(in);
    static constexpr std::string_view kCols[] = {
        "symbol", "kind", "height", "backness", "roundness", "manner", "place", "voicing"};
    std::size_t idx[8];
    for (std::size_t i = 0; i < 8; ++i) {
      idx[i] = t.column(kCols[i]);
      if (idx[i] == csv::Table::npos) {
        throw ParseError(ErrorKind::kParse,
                         "feature table missing column '" + std::string(kCols[i]) + "'", 1);
      }
    }
    FeatureTable out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      const std::string symbol = unicode::nfd(row[idx[0]]);
      const std::string& kind = row[idx[1]];
      FeatureEntry e;
      if (kind == "vowel") {
        e.vowel = VowelFeatures{row[idx[2]], row[idx[3]], row[idx[4]]};
      } else if (kind == "consonant") {
        e.consonant = ConsonantFeatures{row[idx[5]], row[idx[6]], row[idx[7]]};
      } else {
        throw ParseError(ErrorKind::kParse, "kind must be vowel or consonant", r + 2, 2);
      }
      if (symbol.empty()) throw ParseError(ErrorKind::kParse, "empty symbol", r + 2, 1);
      out.entries_[symbol] = std::move(e);
    }
    return out;
  }

  const FeatureEntry* find(const std::string& symbol) const {
    auto it = entries_.find(symbol);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void add(std::string symbol, FeatureEntry e) { entries_[std::move(symbol)] = std::move(e); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, FeatureEntry> entries_;
};

}  // namespace phonodisc

#endif  // PHONODISC_IPA_HPP
