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

// Frequency-threshold inventory discovery and its evaluation: scoring against
// a true inventory, threshold sweeps, per-symbol and per-feature breakdowns,
// and correlation with external measures.

#ifndef PHONODISC_DISCOVERY_HPP
#define PHONODISC_DISCOVERY_HPP

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "phonodisc/csv.hpp"
#include "phonodisc/error.hpp"
#include "phonodisc/ipa.hpp"

namespace phonodisc {

struct Inventory {
  Unit unit = Unit::kPhoneToken;
  std::set<std::string> symbols;
  std::string language;
};

/// One symbol per line, '#' starts a comment. Symbols are NFD-normalized.
inline Inventory parse_inventory(std::string_view text, Unit unit, std::string language) {
  Inventory inv{unit, {}, std::move(language)};
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && detail::is_blank(line.front())) line.remove_prefix(1);
    while (!line.empty() && detail::is_blank(line.back())) line.remove_suffix(1);
    if (line.empty()) continue;
    if (unicode::find_invalid_utf8(line)) {
      throw ParseError(ErrorKind::kEncoding, "malformed UTF-8", line_no);
    }
    std::string sym = unicode::nfd(line);
    if (unit == Unit::kPhoneToken && unicode::decode(sym).size() != 1) {
      throw ParseError(ErrorKind::kParse,
                       "phone-token inventory entry '" + sym + "' is not a single symbol", line_no);
    }
    inv.symbols.insert(std::move(sym));
  }
  return inv;
}

inline std::string format_inventory(const Inventory& inv) {
  std::string out = "# language: " + inv.language + "\n# unit: " +
                    std::string(to_string(inv.unit)) + "\n";
  for (const auto& s : inv.symbols) out += s + "\n";
  return out;
}

struct FrequencyProfile {
  Unit unit = Unit::kPhoneToken;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  double frequency(const std::string& s) const {
    auto it = counts.find(s);
    return it == counts.end() || total == 0
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(total);
  }

  std::map<std::string, double> relative_frequencies() const {
    std::map<std::string, double> out;
    for (const auto& [s, c] : counts) out[s] = static_cast<double>(c) / static_cast<double>(total);
    return out;
  }
};

/// Symbol occurrence counts over a transcript, normalized by the total.
inline FrequencyProfile frequency_profile(const Transcript& t, Unit unit) {
  FrequencyProfile p;
  p.unit = unit;
  for (const auto& u : t.utterances) {
    for (const auto& s : symbols(u.phones, unit)) {
      ++p.counts[s];
      ++p.total;
    }
  }
  if (p.total == 0) {
    throw Error(ErrorKind::kEmptyTranscript,
                "frequency_profile: transcript '" + t.language + "' has no symbols");
  }
  return p;
}

enum class Boundary { kInclusive, kExclusive };

/// Symbols whose relative frequency reaches the threshold.
inline Inventory discover(const FrequencyProfile& profile, double threshold,
                          Boundary boundary = Boundary::kInclusive, std::string language = {}) {
  if (threshold < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "discover: negative threshold");
  }
  Inventory inv{profile.unit, {}, std::move(language)};
  for (const auto& [s, c] : profile.counts) {
    const double f = static_cast<double>(c) / static_cast<double>(profile.total);
    if (boundary == Boundary::kInclusive ? f >= threshold : f > threshold) inv.symbols.insert(s);
  }
  return inv;
}

/// Relative frequency of the rarest symbol in a (reference) transcript.
inline double min_threshold(const Transcript& t, Unit unit) {
  const FrequencyProfile p = frequency_profile(t, unit);
  std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [s, c] : p.counts) least = std::min(least, c);
  return static_cast<double>(least) / static_cast<double>(p.total);
}

/// A discovery threshold: a fixed relative frequency or the per-language
/// rarest-reference-symbol frequency.
struct Threshold {
  std::optional<double> value;  // nullopt means "min"

  static Threshold min() { return {}; }
  static Threshold fixed(double v) { return {v}; }
  bool is_min() const { return !value.has_value(); }
  std::string label() const { return value ? csv::format_double(*value) : "min"; }
  bool operator==(const Threshold&) const = default;
};

inline Threshold parse_threshold(std::string_view s) {
  if (s == "min") return Threshold::min();
  auto v = csv::parse_double(s);
  if (!v || *v < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "bad threshold '" + std::string(s) + "'");
  }
  return Threshold::fixed(*v);
}

struct DiscoveryScore {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::string language;
  Threshold threshold;
  Unit unit = Unit::kPhoneToken;

  /// Fills precision/recall/F1 from the counts; undefined ratios are 0.
  void recompute() {
    precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
  }

  static DiscoveryScore from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                                    std::string language = {}) {
    DiscoveryScore s;
    s.tp = tp;
    s.fp = fp;
    s.fn = fn;
    s.language = std::move(language);
    s.recompute();
    return s;
  }
};

inline DiscoveryScore score(const Inventory& predicted, const Inventory& truth) {
  if (predicted.unit != truth.unit) {
    throw Error(ErrorKind::kUnitMismatch, "score: predicted is " +
                                              std::string(to_string(predicted.unit)) +
                                              ", truth is " + std::string(to_string(truth.unit)));
  }
  DiscoveryScore s;
  s.unit = truth.unit;
  s.language = truth.language.empty() ? predicted.language : truth.language;
  for (const auto& sym : predicted.symbols) {
    if (truth.symbols.count(sym)) {
      ++s.tp;
    } else {
      ++s.fp;
    }
  }
  for (const auto& sym : truth.symbols) {
    if (!predicted.symbols.count(sym)) ++s.fn;
  }
  s.recompute();
  return s;
}

/// Micro-average: pooled counts, then ratios.
inline DiscoveryScore aggregate(const std::vector<DiscoveryScore>& scores,
                                std::string label = "ALL") {
  if (scores.empty()) return DiscoveryScore::from_counts(0, 0, 0, std::move(label));
  DiscoveryScore out;
  out.language = std::move(label);
  out.unit = scores.front().unit;
  out.threshold = scores.front().threshold;
  for (const auto& s : scores) {
    if (s.unit != out.unit) throw Error(ErrorKind::kUnitMismatch, "aggregate: mixed units");
    if (!(s.threshold == out.threshold)) {
      throw Error(ErrorKind::kInvalidArgument, "aggregate: mixed thresholds");
    }
    out.tp += s.tp;
    out.fp += s.fp;
    out.fn += s.fn;
  }
  out.recompute();
  return out;
}

/// Everything known about one language for discovery scoring.
struct LanguageData {
  std::string language;
  FrequencyProfile profile;        // from hypothesized transcripts
  Inventory truth;
  std::optional<double> min_freq;  // rarest reference symbol, needed for "min"
};

inline DiscoveryScore discover_and_score(const LanguageData& lang, const Threshold& t,
                                         Boundary boundary = Boundary::kInclusive) {
  double value = 0.0;
  if (t.is_min()) {
    if (!lang.min_freq) {
      throw Error(ErrorKind::kInsufficientData,
                  "threshold 'min' needs reference transcripts for " + lang.language);
    }
    value = *lang.min_freq;
  } else {
    value = *t.value;
  }
  DiscoveryScore s = score(discover(lang.profile, value, boundary, lang.language), lang.truth);
  s.language = lang.language;
  s.threshold = t;
  return s;
}

struct SweepRow {
  Threshold threshold;
  std::vector<DiscoveryScore> per_language;
  DiscoveryScore all;
};

/// One pooled score (plus the per-language ones) per threshold.
inline std::vector<SweepRow> sweep(const std::vector<LanguageData>& langs,
                                   const std::vector<Threshold>& thresholds,
                                   Boundary boundary = Boundary::kInclusive) {
  if (thresholds.empty()) throw Error(ErrorKind::kInvalidArgument, "sweep: no thresholds");
  std::vector<SweepRow> out;
  for (const auto& t : thresholds) {
    SweepRow row{t, {}, {}};
    for (const auto& lang : langs) row.per_language.push_back(discover_and_score(lang, t, boundary));
    row.all = aggregate(row.per_language);
    row.all.threshold = t;
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<Threshold> default_sweep_thresholds() {
  return {Threshold::min(), Threshold::fixed(1e-4), Threshold::fixed(1e-3),
          Threshold::fixed(2e-3), Threshold::fixed(4e-3)};
}

inline double default_threshold(Unit unit) { return unit == Unit::kPhone ? 0.002 : 0.004; }

// ---------------------------------------------------------------------------
// Per-symbol and per-feature breakdowns

struct SymbolScore {
  std::string symbol;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t count = 0;  // languages whose true inventory holds the symbol
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  void recompute() {
    auto s = DiscoveryScore::from_counts(tp, fp, fn);
    precision = s.precision;
    recall = s.recall;
    f1 = s.f1;
  }
};

struct LanguageInventories {
  Inventory predicted;
  Inventory truth;
};

/// Counts, per symbol, the languages where it was a TP, FP or FN.
inline std::vector<SymbolScore> per_symbol_breakdown(const std::vector<LanguageInventories>& langs) {
  std::map<std::string, SymbolScore> acc;
  for (const auto& l : langs) {
    for (const auto& s : l.predicted.symbols) {
      auto& row = acc[s];
      if (l.truth.symbols.count(s)) {
        ++row.tp;
      } else {
        ++row.fp;
      }
    }
    for (const auto& s : l.truth.symbols) {
      auto& row = acc[s];
      ++row.count;
      if (!l.predicted.symbols.count(s)) ++row.fn;
    }
  }
  std::vector<SymbolScore> out;
  for (auto& [sym, row] : acc) {
    row.symbol = sym;
    row.recompute();
    if (row.tp + row.fn != row.count) {
      throw Error(ErrorKind::kInvalidArgument, "per_symbol_breakdown: tp+fn != count for " + sym);
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline constexpr std::string_view kSymbolTableHeader[] = {
    "symbol", "tp", "fp", "fn", "count", "precision", "recall", "f1"};

inline std::vector<SymbolScore> parse_symbol_table(std::istream& in) {
  const csv::Table t = csv::read_table(in);
  std::size_t col[5];
  for (std::size_t i = 0; i < 5; ++i) {
    col[i] = t.column(kSymbolTableHeader[i]);
    if (col[i] == csv::Table::npos) {
      throw ParseError(ErrorKind::kParse,
                       "per-symbol table missing column '" + std::string(kSymbolTableHeader[i]) + "'", 1);
    }
  }
  std::vector<SymbolScore> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    SymbolScore s;
    s.symbol = unicode::nfd(t.rows[r][col[0]]);
    std::uint64_t* fields[] = {&s.tp, &s.fp, &s.fn, &s.count};
    for (std::size_t i = 0; i < 4; ++i) {
      auto v = csv::parse_int(t.rows[r][col[i + 1]]);
      if (!v || *v < 0) throw ParseError(ErrorKind::kParse, "bad count", r + 2, col[i + 1] + 1);
      *fields[i] = static_cast<std::uint64_t>(*v);
    }
    s.recompute();
    out.push_back(std::move(s));
  }
  return out;
}

struct FeatureRow {
  std::string axis;
  std::string category;
  std::uint64_t min_languages = 0;
  std::uint64_t max_languages = 0;
  std::uint64_t count = 0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct FeatureBreakdown {
  std::vector<FeatureRow> rows;
  std::vector<std::string> warnings;
};

/// Pools per-symbol counts by articulatory category. Modifier symbols are
/// skipped; base symbols missing from the feature table are reported.
inline FeatureBreakdown feature_breakdown(const std::vector<SymbolScore>& symbols,
                                          const FeatureTable& features,
                                          const SymbolClassTable& classes = SymbolClassTable::builtin()) {
  FeatureBreakdown out;
  std::map<std::pair<std::string, std::string>, FeatureRow> acc;
  for (const auto& s : symbols) {
    if (classify_symbol(s.symbol, classes) != SymbolClass::kBase) continue;
    const FeatureEntry* e = features.find(s.symbol);
    if (!e) {
      out.warnings.push_back("no articulatory features for '" + s.symbol + "'");
      continue;
    }
    auto axes = e->is_vowel() ? std::span<const std::string_view>(kVowelAxes)
                              : std::span<const std::string_view>(kConsonantAxes);
    for (auto axis : axes) {
      const std::string cat = e->axis(axis);
      if (cat.empty()) continue;
      auto& row = acc[{std::string(axis), cat}];
      row.axis = axis;
      row.category = cat;
      row.tp += s.tp;
      row.fp += s.fp;
      row.fn += s.fn;
      row.count += s.count;
      if (s.count > 0) {
        row.min_languages = row.min_languages == 0 ? s.count : std::min(row.min_languages, s.count);
        row.max_languages = std::max(row.max_languages, s.count);
      }
    }
  }
  for (auto& [key, row] : acc) {
    auto sc = DiscoveryScore::from_counts(row.tp, row.fp, row.fn);
    row.precision = sc.precision;
    row.recall = sc.recall;
    row.f1 = sc.f1;
    out.rows.push_back(std::move(row));
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const FeatureRow& a, const FeatureRow& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    if (a.f1 != b.f1) return a.f1 > b.f1;
    if (a.count != b.count) return a.count > b.count;
    return a.category < b.category;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Extrinsic correlation

struct ExtrinsicEntry {
  std::optional<double> phoible_pct;
  std::optional<double> aos_pct;
  std::optional<double> aoa_rank;
};

using ExtrinsicTable = std::map<std::string, ExtrinsicEntry>;

inline ExtrinsicTable parse_extrinsic_table(std::istream& in) {
  const csv::Table t = csv::read_table(in);
  static constexpr std::string_view kCols[] = {"symbol", "phoible_pct", "aos_pct", "aoa_rank"};
  std::size_t col[4];
  for (std::size_t i = 0; i < 4; ++i) {
    col[i] = t.column(kCols[i]);
    if (col[i] == csv::Table::npos) {
      throw ParseError(ErrorKind::kParse,
                       "extrinsic table missing column '" + std::string(kCols[i]) + "'", 1);
    }
  }
  ExtrinsicTable out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    auto cell = [&](std::size_t i) -> std::optional<double> {
      const std::string& s = row[col[i]];
      if (s.empty() || s == "-" || s == "N/A") return std::nullopt;
      auto v = csv::parse_double(s);
      if (!v) throw ParseError(ErrorKind::kParse, "bad number '" + s + "'", r + 2, col[i] + 1);
      return v;
    };
    ExtrinsicEntry e{cell(1), cell(2), cell(3)};
    if ((e.phoible_pct && (*e.phoible_pct < 0 || *e.phoible_pct > 100)) ||
        (e.aos_pct && (*e.aos_pct < 0 || *e.aos_pct > 100))) {
      throw ParseError(ErrorKind::kParse, "percentage outside [0, 100]", r + 2);
    }
    if (e.aoa_rank && *e.aoa_rank < 1) throw ParseError(ErrorKind::kParse, "rank below 1", r + 2);
    out[unicode::nfd(row[col[0]])] = e;
  }
  return out;
}

struct Correlation {
  double r = 0.0;
  double p = 1.0;
  std::int64_t dof = 0;
  std::size_t n = 0;
};

/// Sample Pearson r over pairs where both values are present, with a
/// two-sided t-test on n - 2 degrees of freedom.
inline Correlation pearson_correlation(const std::vector<std::optional<double>>& x,
                                       const std::vector<std::optional<double>>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kInvalidArgument, "pearson_correlation: length mismatch");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      xs.push_back(*x[i]);
      ys.push_back(*y[i]);
    }
  }
  const std::size_t n = xs.size();
  if (n < 3) {
    throw Error(ErrorKind::kInsufficientData,
                "pearson_correlation: " + std::to_string(n) + " usable pairs, need 3");
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::kUndefinedCorrelation, "pearson_correlation: zero variance");
  }
  Correlation c;
  c.n = n;
  c.dof = static_cast<std::int64_t>(n) - 2;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double one_minus = 1.0 - c.r * c.r;
  if (c.dof == 0) {
    c.p = 1.0;
  } else if (one_minus <= 0.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(static_cast<double>(c.dof) / one_minus);
    boost::math::students_t dist(static_cast<double>(c.dof));
    c.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return c;
}

inline std::vector<std::optional<double>> to_optional(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

/// "**" for p < 0.01, "*" for p < 0.05.
inline std::string significance_stars(double p) {
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

/// Percent with one decimal, rounded half up.
inline std::string format_percent(double fraction) {
  const double scaled = std::floor(fraction * 1000.0 + 0.5 + 1e-9) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", scaled);
  return buf;
}

}  // namespace phonodisc

#endif  // PHONODISC_DISCOVERY_HPP
