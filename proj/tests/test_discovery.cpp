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

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phonodisc.hpp"

namespace phonodisc {
namespace {

std::vector<DiscoveryScore> load_counts(const std::string& name) {
  std::ifstream in(std::string(PHONODISC_TEST_DATA) + "/" + name);
  return io::parse_count_table(in);
}

struct Printed {
  const char* p;
  const char* r;
  const char* f1;
};

void expect_printed(const std::vector<DiscoveryScore>& rows, const std::vector<Printed>& want) {
  ASSERT_EQ(rows.size(), want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(format_percent(rows[i].precision), want[i].p) << rows[i].language;
    EXPECT_EQ(format_percent(rows[i].recall), want[i].r) << rows[i].language;
    EXPECT_EQ(format_percent(rows[i].f1), want[i].f1) << rows[i].language;
  }
}

TEST(Scores, PhoneTableFromPublishedCounts) {
  auto rows = load_counts("table9_counts.csv");
  rows.push_back(aggregate(rows));
  expect_printed(rows, {{"30.2", "14.1", "19.2"}, {"54.5", "57.7", "56.1"}, {"32.5", "5.7", "9.7"},
                        {"42.3", "13.2", "20.1"}, {"55.8", "42.0", "47.9"}, {"67.4", "48.3", "56.3"},
                        {"34.6", "79.4", "48.2"}, {"48.1", "74.3", "58.4"}, {"56.1", "65.7", "60.5"},
                        {"75.0", "46.7", "57.5"}, {"55.2", "17.2", "26.2"}, {"48.7", "63.3", "55.1"},
                        {"51.7", "10.5", "17.4"}, {"47.9", "25.6", "33.4"}});
  EXPECT_EQ(rows.back().tp, 289u);
  EXPECT_EQ(rows.back().fp, 314u);
  EXPECT_EQ(rows.back().fn, 838u);
}

TEST(Scores, PhoneTokenTableFromPublishedCounts) {
  auto rows = load_counts("table7_counts.csv");
  rows.push_back(aggregate(rows));
  expect_printed(rows, {{"80.6", "87.9", "84.1"}, {"65.0", "78.8", "71.2"}, {"76.3", "69.0", "72.5"},
                        {"75.0", "84.4", "79.4"}, {"68.4", "57.8", "62.7"}, {"63.2", "77.4", "69.6"},
                        {"75.8", "75.8", "75.8"}, {"57.9", "78.6", "66.7"}, {"68.6", "80.0", "73.8"},
                        {"73.1", "45.2", "55.9"}, {"68.2", "41.7", "51.7"}, {"61.3", "63.3", "62.3"},
                        {"77.3", "51.5", "61.8"}, {"69.7", "67.4", "68.6"}});
}

TEST(Scores, MicroAverageDiffersFromMacro) {
  const std::vector<DiscoveryScore> s = {DiscoveryScore::from_counts(1, 0, 0, "a"),
                                         DiscoveryScore::from_counts(1, 9, 0, "b")};
  EXPECT_DOUBLE_EQ(aggregate(s).precision, 2.0 / 11.0);
  EXPECT_EQ(aggregate(s).language, "ALL");
}

TEST(Scores, UndefinedRatiosAreZero) {
  const auto s = DiscoveryScore::from_counts(0, 0, 1);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  const auto f = DiscoveryScore::from_counts(6, 0, 7);
  EXPECT_EQ(format_percent(f.precision), "100.0");
  EXPECT_EQ(format_percent(f.recall), "46.2");
  EXPECT_EQ(format_percent(f.f1), "63.2");
}

TEST(Scores, UnitMismatch) {
  Inventory a{Unit::kPhone, {"a"}, "x"};
  Inventory b{Unit::kPhoneToken, {"a"}, "x"};
  try {
    score(a, b);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnitMismatch);
  }
}

TEST(Discover, BoundaryIsInclusiveByDefault) {
  const Transcript t = parse_transcript("u\ta a a b\n", "x");
  const FrequencyProfile p = frequency_profile(t, Unit::kPhone);
  EXPECT_EQ(discover(p, 0.25).symbols, (std::set<std::string>{"a", "b"}));
  EXPECT_EQ(discover(p, 0.25, Boundary::kExclusive).symbols, (std::set<std::string>{"a"}));
  EXPECT_DOUBLE_EQ(min_threshold(t, Unit::kPhone), 0.25);
  EXPECT_THROW(discover(p, -0.1), Error);
}

TEST(Discover, TokenProfileCountsModifiers) {
  const Transcript t = parse_transcript("u\ta˥ a˩ a\n", "x");
  const FrequencyProfile p = frequency_profile(t, Unit::kPhoneToken);
  EXPECT_EQ(p.total, 5u);
  EXPECT_EQ(p.counts.at("a"), 3u);
  EXPECT_EQ(frequency_profile(t, Unit::kPhone).counts.size(), 3u);
  try {
    frequency_profile(parse_transcript("u\t\n", "x"), Unit::kPhone);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyTranscript);
  }
}

TEST(Discover, MinNeedsReferenceFrequency) {
  LanguageData d{"x", frequency_profile(parse_transcript("u\ta b\n", "x"), Unit::kPhone),
                 Inventory{Unit::kPhone, {"a"}, "x"}, std::nullopt};
  try {
    discover_and_score(d, Threshold::min());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  d.min_freq = 0.5;
  const auto s = discover_and_score(d, Threshold::min());
  EXPECT_EQ(s.tp, 1u);
  EXPECT_EQ(s.fp, 1u);
  EXPECT_TRUE(s.threshold.is_min());
}

TEST(Discover, SweepIsMonotone) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    FrequencyProfile p;
    p.unit = Unit::kPhone;
    Inventory truth{Unit::kPhone, {}, "x"};
    for (int i = 0; i < 20; ++i) {
      const std::string s(1, static_cast<char>('a' + i));
      p.counts[s] = 1 + rng() % 100;
      p.total += p.counts[s];
      if (rng() % 2) truth.symbols.insert(s);
    }
    LanguageData d{"x", p, truth, 0.0};
    const auto rows = sweep({d}, {Threshold::min(), Threshold::fixed(0.01), Threshold::fixed(0.05),
                                  Threshold::fixed(0.08)});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_LE(rows[i].all.recall, rows[i - 1].all.recall);
      EXPECT_LE(rows[i].all.fp, rows[i - 1].all.fp);
    }
  }
}

TEST(Threshold, ParsingAndDefaults) {
  EXPECT_TRUE(parse_threshold("min").is_min());
  EXPECT_EQ(parse_threshold("0.004").value, 0.004);
  EXPECT_THROW(parse_threshold("-1"), Error);
  EXPECT_THROW(parse_threshold("lots"), Error);
  EXPECT_EQ(default_threshold(Unit::kPhone), 0.002);
  EXPECT_EQ(default_threshold(Unit::kPhoneToken), 0.004);
  EXPECT_EQ(default_sweep_thresholds().size(), 5u);
  EXPECT_EQ(Threshold::fixed(0.001).label(), "0.001");
}

TEST(Inventory, ParsesCommentsAndNormalizes) {
  const Inventory inv = parse_inventory("# header\na\né  # precomposed\n\n  ŋ\n", Unit::kPhone, "x");
  EXPECT_EQ(inv.symbols.size(), 3u);
  EXPECT_TRUE(inv.symbols.count(unicode::nfd("é")));
  EXPECT_THROW(parse_inventory("é\n", Unit::kPhoneToken, "x"), ParseError);
  EXPECT_EQ(parse_inventory(format_inventory(inv), Unit::kPhone, "x").symbols, inv.symbols);
}

TEST(PerSymbol, CountsLanguagesPerOutcome) {
  std::vector<LanguageInventories> langs = {
      {{Unit::kPhone, {"a", "b"}, "x"}, {Unit::kPhone, {"a", "c"}, "x"}},
      {{Unit::kPhone, {"a", "c"}, "y"}, {Unit::kPhone, {"a", "c"}, "y"}},
  };
  const auto rows = per_symbol_breakdown(langs);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].symbol, "a");
  EXPECT_EQ(rows[0].tp, 2u);
  EXPECT_EQ(rows[0].count, 2u);
  EXPECT_EQ(rows[1].fp, 1u);
  EXPECT_EQ(rows[1].count, 0u);
  EXPECT_EQ(rows[2].tp, 1u);
  EXPECT_EQ(rows[2].fn, 1u);
  EXPECT_DOUBLE_EQ(rows[2].recall, 0.5);
}

TEST(Features, SpotRowsFromSymbolFixture) {
  std::ifstream in(PHONODISC_TEST_DATA "/table12_symbols.csv");
  const auto fb = feature_breakdown(parse_symbol_table(in), builtin_feature_table());
  auto find = [&](const char* axis, const char* cat) -> const FeatureRow& {
    for (const auto& r : fb.rows) {
      if (r.axis == axis && r.category == cat) return r;
    }
    throw std::runtime_error(std::string("missing ") + cat);
  };
  const FeatureRow& lat = find("manner", "lateral-approximant");
  EXPECT_EQ(lat.min_languages, 1u);
  EXPECT_EQ(lat.max_languages, 13u);
  EXPECT_EQ(lat.count, 14u);
  EXPECT_EQ(format_percent(lat.precision), "100.0");
  EXPECT_EQ(format_percent(lat.recall), "92.9");
  EXPECT_EQ(format_percent(lat.f1), "96.3");
  const FeatureRow& click = find("manner", "click");
  EXPECT_EQ(click.count, 2u);
  EXPECT_EQ(click.f1, 0.0);
  EXPECT_TRUE(fb.warnings.empty());
}

TEST(Features, ModifiersSkippedUnknownBasesReported) {
  std::vector<SymbolScore> rows(3);
  rows[0].symbol = "˥";
  rows[1].symbol = "ⱱ̟";
  rows[2].symbol = "m";
  for (auto& r : rows) {
    r.tp = r.count = 1;
    r.recompute();
  }
  FeatureTable ft;
  ft.add("m", FeatureEntry{std::nullopt, ConsonantFeatures{"nasal", "bilabial", "voiced"}});
  const auto fb = feature_breakdown(rows, ft);
  EXPECT_EQ(fb.rows.size(), 3u);
  ASSERT_EQ(fb.warnings.size(), 1u);
  EXPECT_NE(fb.warnings[0].find("ⱱ"), std::string::npos);
}

TEST(Correlation, MatchesClosedForms) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(20);
    std::vector<double> y(20);
    for (int k = 0; k < 20; ++k) {
      x[k] = g(rng);
      y[k] = x[k] * 0.3 + g(rng);
    }
    EXPECT_NEAR(pearson_correlation(to_optional(x), to_optional(y)).r, oracle::pearson(x, y), 1e-10);
  }
}

TEST(Correlation, PValueAgainstSmallSampleDistributions) {
  // One degree of freedom: t is Cauchy. Two: p = 1 - |t| / sqrt(2 + t^2).
  const std::vector<double> x3 = {1, 2, 3};
  const std::vector<double> y3 = {1, 3, 2};
  const Correlation c3 = pearson_correlation(to_optional(x3), to_optional(y3));
  const double t3 = c3.r * std::sqrt(1.0 / (1 - c3.r * c3.r));
  EXPECT_NEAR(c3.p, 1 - 2 / std::numbers::pi * std::atan(std::abs(t3)), 1e-12);
  EXPECT_EQ(c3.dof, 1);

  const std::vector<double> x4 = {1, 2, 3, 4};
  const std::vector<double> y4 = {2, 1, 4, 3};
  const Correlation c4 = pearson_correlation(to_optional(x4), to_optional(y4));
  const double t4 = c4.r * std::sqrt(2.0 / (1 - c4.r * c4.r));
  EXPECT_NEAR(c4.p, 1 - std::abs(t4) / std::sqrt(2 + t4 * t4), 1e-12);
}

TEST(Correlation, MissingValuesAndErrors) {
  std::vector<std::optional<double>> x = {1, 2, std::nullopt, 4, 5};
  std::vector<std::optional<double>> y = {2, 4, 6, std::nullopt, 10};
  const Correlation c = pearson_correlation(x, y);
  EXPECT_EQ(c.n, 3u);
  EXPECT_NEAR(c.r, 1.0, 1e-12);
  try {
    pearson_correlation({1, 2, std::nullopt}, {1, 2, 3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  try {
    pearson_correlation({1, 1, 1}, {1, 2, 3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedCorrelation);
  }
}

TEST(Correlation, Stars) {
  EXPECT_EQ(significance_stars(0.049), "*");
  EXPECT_EQ(significance_stars(0.011), "*");
  EXPECT_EQ(significance_stars(0.01), "*");
  EXPECT_EQ(significance_stars(0.009), "**");
  EXPECT_EQ(significance_stars(0.05), "");
}

TEST(Extrinsic, MissingCellsAndRanges) {
  std::istringstream in("symbol,phoible_pct,aos_pct,aoa_rank\na,50,-,N/A\nb,,3,2\n");
  const auto t = parse_extrinsic_table(in);
  EXPECT_EQ(t.at("a").phoible_pct, 50.0);
  EXPECT_FALSE(t.at("a").aos_pct);
  EXPECT_FALSE(t.at("b").phoible_pct);
  std::istringstream bad("symbol,phoible_pct,aos_pct,aoa_rank\na,150,1,1\n");
  EXPECT_THROW(parse_extrinsic_table(bad), ParseError);
}

TEST(Format, PercentRoundsHalfUp) {
  EXPECT_EQ(format_percent(0.0005), "0.1");
  EXPECT_EQ(format_percent(0.12345), "12.3");
  EXPECT_EQ(format_percent(0.42), "42.0");
  EXPECT_EQ(format_percent(0.99995), "100.0");
  EXPECT_EQ(format_percent(0.0), "0.0");
}

}  // namespace
}  // namespace phonodisc
