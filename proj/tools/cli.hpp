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

// The phonodisc command line: subcommands over the library, stable output
// files, and a fixed exit-code map. run() is a plain function so tests can
// drive the CLI in-process.

#ifndef PHONODISC_TOOLS_CLI_HPP
#define PHONODISC_TOOLS_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phonodisc.hpp"

namespace phonodisc::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseFailure = 2,
  kPairingFailure = 3,
  kDegenerateAnalysis = 4,
  kInsufficientData = 5,
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kEncoding:
    case ErrorKind::kParse:
    case ErrorKind::kNoBasePhone:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kInvalidDistribution:
    case ErrorKind::kUnitMismatch:
    case ErrorKind::kUnknownSymbol:
      return kParseFailure;
    case ErrorKind::kMissingUtterance:
      return kPairingFailure;
    case ErrorKind::kDegenerate:
    case ErrorKind::kTooFewLabels:
      return kDegenerateAnalysis;
    case ErrorKind::kInsufficientData:
    case ErrorKind::kUndefinedCorrelation:
    case ErrorKind::kEmptyTranscript:
    case ErrorKind::kUndefinedRate:
      return kInsufficientData;
    case ErrorKind::kIo:
      return kFailure;
  }
  return kFailure;
}

/// Reads a single JSON document as CLI11 configuration. Top-level keys set
/// global options; an object under a subcommand name sets that
/// subcommand's options. Command-line flags still win.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const nlohmann::json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        flatten(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

/// Files of one run are written to a hidden staging directory and moved
/// into place only when the whole run succeeds.
class OutputTree {
 public:
  explicit OutputTree(fs::path dir) : dir_(std::move(dir)), staging_(dir_ / ".phonodisc-staging") {}

  OutputTree(const OutputTree&) = delete;
  OutputTree& operator=(const OutputTree&) = delete;

  ~OutputTree() {
    std::error_code ec;
    if (!committed_) fs::remove_all(staging_, ec);
  }

  void write(const std::string& name, const std::string& content) {
    if (!opened_) {
      fs::create_directories(staging_);
      opened_ = true;
    }
    const fs::path path = staging_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
    names_.push_back(name);
  }

  void commit() {
    for (const auto& name : names_) {
      const fs::path target = dir_ / name;
      fs::create_directories(target.parent_path());
      fs::rename(staging_ / name, target);
    }
    std::error_code ec;
    fs::remove_all(staging_, ec);
    committed_ = true;
  }

 private:
  fs::path dir_;
  fs::path staging_;
  std::vector<std::string> names_;
  bool opened_ = false;
  bool committed_ = false;
};

struct GlobalOptions {
  std::string unit = "phone-token";
  std::uint64_t seed = 0;
  std::string out_dir = "phonodisc-out";
  bool paper_rounding = false;
  std::string symbol_table;
};

struct Context {
  GlobalOptions global;
  std::ostream& out;
  std::ostream& err;
  SymbolClassTable classes = SymbolClassTable::builtin();
  std::set<std::string> warnings;

  Unit unit() const {
    auto u = unit_from_string(global.unit);
    if (!u) throw Error(ErrorKind::kInvalidArgument, "unknown unit '" + global.unit + "'");
    return *u;
  }

  io::NumberStyle style() const { return {global.paper_rounding}; }

  WarningSink sink() {
    return [this](const std::string& w) { warnings.insert(w); };
  }

  Transcript load_transcript(const std::string& path, std::string language = {}) {
    if (language.empty()) language = fs::path(path).stem().string();
    const std::string text = io::read_file(path);
    try {
      return parse_transcript(text, std::move(language), classes, sink());
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), path + ": " + e.what(), e.line(), e.field());
    }
  }

  Inventory load_inventory(const std::string& path, const std::string& language) {
    try {
      return parse_inventory(io::read_file(path), unit(), language);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), path + ": " + e.what(), e.line(), e.field());
    }
  }

  template <typename Parser>
  auto load_csv(const std::string& path, Parser parse) {
    std::istringstream in(io::read_file(path));
    try {
      return parse(in);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), path + ": " + e.what(), e.line(), e.field());
    }
  }
};

// ---------------------------------------------------------------------------
// Subcommands

struct TokenizeArgs {
  std::string transcript;
  bool to_file = false;
};

inline int cmd_tokenize(Context& ctx, const TokenizeArgs& args) {
  const Transcript t = ctx.load_transcript(args.transcript);
  const Unit unit = ctx.unit();
  std::ostringstream listing;
  for (const auto& u : t.utterances) {
    for (const auto& phone : u.phones) {
      if (unit == Unit::kPhone) {
        std::string classes;
        for (const auto& tok : phone.tokens()) {
          if (!classes.empty()) classes += '+';
          classes += to_string(tok.cls);
        }
        listing << u.id << '\t' << phone.text() << '\t' << classes << '\n';
      } else {
        for (const auto& tok : phone.tokens()) {
          listing << u.id << '\t' << tok.text << '\t' << to_string(tok.cls) << '\n';
        }
      }
    }
  }
  if (args.to_file) {
    OutputTree tree(ctx.global.out_dir);
    tree.write("tokens.tsv", listing.str());
    tree.commit();
  } else {
    ctx.out << listing.str();
  }
  return kOk;
}

struct ScoreArgs {
  std::string ref;
  std::string hyp;
};

inline int cmd_score(Context& ctx, const ScoreArgs& args) {
  const Transcript ref = ctx.load_transcript(args.ref);
  const Transcript hyp = ctx.load_transcript(args.hyp);
  const ErrorReport report = transcript_error_rate(ref, hyp, ctx.unit());
  OutputTree tree(ctx.global.out_dir);
  tree.write("error_report.json", io::to_json(report).dump(2) + "\n");
  tree.write("error_report.csv", io::to_string(io::error_report_table(report, ctx.style())));
  tree.commit();
  ctx.out << (ctx.unit() == Unit::kPhone ? "PER " : "PTER ") << format_percent(report.error_rate)
          << "% (ins " << report.insertions << ", del " << report.deletions << ", sub "
          << report.substitutions << ", ref " << report.ref_length << ")\n";
  return kOk;
}

struct ConfusionArgs {
  std::string ref;
  std::string hyp;
  std::uint64_t min_count = 50;
  std::string linkage = "average";
  double cut = 0.5;
  std::string empty_rule = "and";
};

inline int cmd_confusions(Context& ctx, const ConfusionArgs& args) {
  const Transcript ref = ctx.load_transcript(args.ref);
  const Transcript hyp = ctx.load_transcript(args.hyp);
  const auto linkage = linkage_from_string(args.linkage);
  if (!linkage) throw Error(ErrorKind::kInvalidArgument, "unknown linkage '" + args.linkage + "'");
  if (args.empty_rule != "and" && args.empty_rule != "or") {
    throw Error(ErrorKind::kInvalidArgument, "--empty-rule must be 'and' or 'or'");
  }
  const EmptyRule rule = args.empty_rule == "and" ? EmptyRule::kRowAndColumn : EmptyRule::kRowOrColumn;

  const ConfusionMatrix raw = accumulate_confusions(align_transcripts(ref, hyp, ctx.unit()));
  const PruneResult pruned = prune(raw, args.min_count, rule);
  const RowStochasticMatrix rows = row_normalize(pruned.matrix, RowPolicy::kSkipEmpty);
  auto summary = io::to_json(pruned.summary, args.min_count);
  std::vector<std::string> row_labels;
  for (const auto& [k, v] : rows.rows) row_labels.push_back(k);
  summary["row_labels"] = row_labels;
  if (rows.rows.size() < 3) {
    ctx.err << "degenerate confusion matrix: " << rows.rows.size()
            << " symbols with confusions left after pruning (need 3)\n"
            << summary.dump(2) << "\n";
    return kDegenerateAnalysis;
  }
  const DistanceMatrix dist = distance_matrix(rows);
  const Dendrogram dendro = agglomerative_cluster(dist, *linkage);
  const auto clusters = flat_clusters(dendro, args.cut);
  const auto points = project_2d(dist, ctx.global.seed);

  OutputTree tree(ctx.global.out_dir);
  tree.write("confusion_matrix.csv", io::to_string(io::confusion_table(raw)));
  tree.write("confusion_matrix_pruned.csv", io::to_string(io::confusion_table(pruned.matrix)));
  tree.write("pruning_summary.json", summary.dump(2) + "\n");
  tree.write("distances.csv", io::to_string(io::distance_table(dist)));
  tree.write("dendrogram.json", io::to_json(dendro, *linkage).dump(2) + "\n");
  tree.write("dendrogram.nwk", to_newick(dendro) + "\n");
  tree.write("clusters.csv", io::to_string(io::clusters_table(clusters)));
  tree.write("projection.csv", io::to_string(io::projection_table(points)));
  tree.commit();
  ctx.out << rows.rows.size() << " symbols, " << clusters.size() << " clusters at height "
          << args.cut << "\n";
  return kOk;
}

struct DiscoverArgs {
  std::vector<std::string> hyp;
  std::vector<std::string> truth;
  std::vector<std::string> ref;
  std::vector<std::string> language;
  std::vector<std::string> thresholds;
  std::string counts;
  std::string min_from = "ref";
  bool exclusive = false;
  std::string system = "system";
};

inline std::vector<LanguageData> load_languages(Context& ctx, const DiscoverArgs& args,
                                                bool need_min) {
  if (args.hyp.empty()) throw Error(ErrorKind::kInvalidArgument, "no --hyp transcripts given");
  if (args.truth.size() != args.hyp.size()) {
    throw Error(ErrorKind::kInvalidArgument, "--truth must be given once per --hyp");
  }
  if (!args.ref.empty() && args.ref.size() != args.hyp.size()) {
    throw Error(ErrorKind::kInvalidArgument, "--ref must be given once per --hyp");
  }
  if (!args.language.empty() && args.language.size() != args.hyp.size()) {
    throw Error(ErrorKind::kInvalidArgument, "--language must be given once per --hyp");
  }
  if (args.min_from != "ref" && args.min_from != "hyp") {
    throw Error(ErrorKind::kInvalidArgument, "--min-from must be 'ref' or 'hyp'");
  }
  if (need_min && args.min_from == "ref" && args.ref.empty()) {
    throw Error(ErrorKind::kInsufficientData, "threshold 'min' requires --ref transcripts");
  }
  const Unit unit = ctx.unit();
  std::vector<LanguageData> out;
  for (std::size_t i = 0; i < args.hyp.size(); ++i) {
    const std::string lang =
        args.language.empty() ? fs::path(args.hyp[i]).stem().string() : args.language[i];
    LanguageData d;
    d.language = lang;
    const Transcript hyp = ctx.load_transcript(args.hyp[i], lang);
    d.profile = frequency_profile(hyp, unit);
    d.truth = ctx.load_inventory(args.truth[i], lang);
    if (args.min_from == "hyp") {
      d.min_freq = min_threshold(hyp, unit);
    } else if (!args.ref.empty()) {
      d.min_freq = min_threshold(ctx.load_transcript(args.ref[i], lang), unit);
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<Threshold> parse_thresholds(const std::vector<std::string>& raw,
                                               std::vector<Threshold> fallback) {
  if (raw.empty()) return fallback;
  std::vector<Threshold> out;
  for (const auto& s : raw) out.push_back(parse_threshold(s));
  return out;
}

inline int cmd_discover(Context& ctx, const DiscoverArgs& args) {
  const auto style = ctx.style();
  if (!args.counts.empty()) {
    auto scores = ctx.load_csv(args.counts, io::parse_count_table);
    scores.push_back(aggregate(scores));
    OutputTree tree(ctx.global.out_dir);
    tree.write("scores.csv", io::to_string(io::score_table(scores, style)));
    tree.commit();
    ctx.out << "ALL F1 " << format_percent(scores.back().f1) << "%\n";
    return kOk;
  }
  const auto thresholds =
      parse_thresholds(args.thresholds, {Threshold::fixed(default_threshold(ctx.unit()))});
  if (thresholds.size() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "discover takes one threshold; use sweep for several");
  }
  const Threshold t = thresholds.front();
  const auto langs = load_languages(ctx, args, t.is_min());
  const Boundary boundary = args.exclusive ? Boundary::kExclusive : Boundary::kInclusive;

  std::vector<DiscoveryScore> scores;
  std::vector<LanguageInventories> inventories;
  OutputTree tree(ctx.global.out_dir);
  for (const auto& lang : langs) {
    const double value = t.is_min() ? *lang.min_freq : *t.value;
    Inventory predicted = discover(lang.profile, value, boundary, lang.language);
    DiscoveryScore s = score(predicted, lang.truth);
    s.language = lang.language;
    s.threshold = t;
    scores.push_back(s);
    tree.write("inventories/" + lang.language + ".txt", format_inventory(predicted));
    inventories.push_back({std::move(predicted), lang.truth});
  }
  scores.push_back(aggregate(scores));
  tree.write("scores.csv", io::to_string(io::score_table(scores, style)));
  tree.write("per_symbol.csv", io::to_string(io::symbol_table(per_symbol_breakdown(inventories), style)));
  tree.commit();
  ctx.out << "threshold " << t.label() << ": ALL F1 " << format_percent(scores.back().f1) << "%\n";
  return kOk;
}

inline int cmd_sweep(Context& ctx, const DiscoverArgs& args) {
  const auto thresholds = parse_thresholds(args.thresholds, default_sweep_thresholds());
  const bool need_min = std::any_of(thresholds.begin(), thresholds.end(),
                                    [](const Threshold& t) { return t.is_min(); });
  const auto langs = load_languages(ctx, args, need_min);
  const auto rows =
      sweep(langs, thresholds, args.exclusive ? Boundary::kExclusive : Boundary::kInclusive);
  const auto style = ctx.style();
  csv::Table detail;
  detail.header = {"Threshold", "Language", "TP", "FP", "FN", "Precision", "Recall", "F1"};
  for (const auto& r : rows) {
    auto all = r.per_language;
    all.push_back(r.all);
    for (const auto& row : io::score_table(all, style).rows) {
      csv::Row out{r.threshold.label()};
      out.insert(out.end(), row.begin(), row.end());
      detail.rows.push_back(std::move(out));
    }
  }
  OutputTree tree(ctx.global.out_dir);
  tree.write("sweep.csv", io::to_string(io::sweep_table(args.system, rows, style)));
  tree.write("sweep_per_language.csv", io::to_string(detail));
  tree.commit();
  return kOk;
}

struct FeaturesArgs {
  std::string symbols;
  std::string features;
};

inline int cmd_features(Context& ctx, const FeaturesArgs& args) {
  const auto symbols = ctx.load_csv(args.symbols, parse_symbol_table);
  const FeatureTable features = args.features.empty()
                                    ? builtin_feature_table()
                                    : ctx.load_csv(args.features, FeatureTable::from_csv);
  const FeatureBreakdown fb = feature_breakdown(symbols, features, ctx.classes);
  for (const auto& w : fb.warnings) ctx.err << "warning: " << w << "\n";
  OutputTree tree(ctx.global.out_dir);
  tree.write("features.csv", io::to_string(io::feature_table(fb, ctx.style())));
  tree.commit();
  return kOk;
}

struct CorrelateArgs {
  std::string symbols;
  std::string extrinsic;
};

inline int cmd_correlate(Context& ctx, const CorrelateArgs& args) {
  const auto symbols = ctx.load_csv(args.symbols, parse_symbol_table);
  const auto extrinsic = ctx.load_csv(args.extrinsic, parse_extrinsic_table);

  struct Measure {
    const char* name;
    std::optional<double> ExtrinsicEntry::*field;
  };
  static constexpr Measure kMeasures[] = {{"Phoible", &ExtrinsicEntry::phoible_pct},
                                          {"AoS", &ExtrinsicEntry::aos_pct},
                                          {"AoA", &ExtrinsicEntry::aoa_rank}};
  struct Metric {
    const char* name;
    double SymbolScore::*field;
  };
  static constexpr Metric kMetrics[] = {{"Prec", &SymbolScore::precision},
                                        {"Rec", &SymbolScore::recall},
                                        {"F1", &SymbolScore::f1}};

  csv::Table t;
  t.header = {"metric", "measure", "r", "p", "dof", "n", "stars"};
  for (const auto& metric : kMetrics) {
    for (const auto& measure : kMeasures) {
      std::vector<std::optional<double>> x;
      std::vector<std::optional<double>> y;
      for (const auto& s : symbols) {
        auto it = extrinsic.find(s.symbol);
        if (it == extrinsic.end()) continue;
        x.push_back(100.0 * (s.*metric.field));
        y.push_back(it->second.*measure.field);
      }
      if (std::none_of(y.begin(), y.end(), [](const auto& v) { return v.has_value(); })) continue;
      const Correlation c = pearson_correlation(x, y);
      char r_buf[32];
      std::snprintf(r_buf, sizeof r_buf, "%.2f", c.r);
      t.rows.push_back({metric.name, measure.name,
                        ctx.global.paper_rounding ? r_buf : csv::format_double(c.r),
                        csv::format_double(c.p), std::to_string(c.dof), std::to_string(c.n),
                        significance_stars(c.p)});
    }
  }
  if (t.rows.empty()) {
    throw Error(ErrorKind::kInsufficientData, "no extrinsic measure overlaps the symbol table");
  }
  OutputTree tree(ctx.global.out_dir);
  tree.write("correlations.csv", io::to_string(t));
  tree.commit();
  return kOk;
}

struct SimulateArgs {
  std::string ref;
  std::string channel;
  std::size_t tokens = 0;
};

inline int cmd_simulate(Context& ctx, const SimulateArgs& args, bool seed_given) {
  io::Preset preset = io::load_preset(args.channel);
  if (seed_given) preset.channel.seed = ctx.global.seed;
  Transcript ref;
  const bool synthesize = args.ref.empty();
  if (synthesize) {
    if (!preset.source || args.tokens == 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "without --ref the channel file needs a \"source\" block and --tokens > 0");
    }
    const auto& src = *preset.source;
    const std::size_t utts = (args.tokens + src.utterance_length - 1) / src.utterance_length;
    ref = sample_reference(src.distribution, utts, src.utterance_length,
                           derive_seed(preset.channel.seed, 0xC0FFEE), src.language, ctx.classes);
  } else {
    ref = ctx.load_transcript(args.ref);
  }
  const SimulationResult sim = simulate(ref, preset.channel, ctx.classes);
  std::ostringstream log;
  io::write_simulation_log(log, sim.log);
  OutputTree tree(ctx.global.out_dir);
  if (synthesize) tree.write("ref.txt", format_transcript(ref));
  tree.write("hyp.txt", format_transcript(sim.hyp));
  tree.write("sim_log.jsonl", log.str());
  tree.commit();
  ctx.out << "simulated " << sim.hyp.utterances.size() << " utterances: "
          << sim.log.count(EditKind::kSubstitution) << " sub, "
          << sim.log.count(EditKind::kDeletion) << " del, "
          << sim.log.count(EditKind::kInsertion) << " ins\n";
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Phone-level ASR scoring and phonetic inventory discovery", "phonodisc"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (flags override it)");

  Context ctx{{}, out, err, SymbolClassTable::builtin(), {}};
  auto& g = ctx.global;
  app.add_option("--unit", g.unit, "phone or phone-token")
      ->check(CLI::IsMember({"phone", "phone-token"}))
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--paper-rounding", g.paper_rounding, "One-decimal percentages in tables");
  app.add_option("--symbol-table", g.symbol_table, "CSV codepoint_hex,class overrides")
      ->check(CLI::ExistingFile);
  app.fallthrough();

  TokenizeArgs tok;
  auto* c_tok = app.add_subcommand("tokenize", "List phones or phone tokens with their classes");
  c_tok->add_option("transcript", tok.transcript)->required()->check(CLI::ExistingFile);
  c_tok->add_flag("--to-file", tok.to_file, "Write tokens.tsv under --out-dir instead of stdout");

  ScoreArgs sc;
  auto* c_score = app.add_subcommand("score", "PER (phone) or PTER (phone-token) of a hypothesis");
  c_score->add_option("--ref", sc.ref)->required()->check(CLI::ExistingFile);
  c_score->add_option("--hyp", sc.hyp)->required()->check(CLI::ExistingFile);

  ConfusionArgs conf;
  auto* c_conf = app.add_subcommand("confusions", "Confusion matrix, JSD clustering and projection");
  c_conf->add_option("--ref", conf.ref)->required()->check(CLI::ExistingFile);
  c_conf->add_option("--hyp", conf.hyp)->required()->check(CLI::ExistingFile);
  c_conf->add_option("--min-count", conf.min_count, "Zero confusion pairs seen fewer times")
      ->capture_default_str();
  c_conf->add_option("--linkage", conf.linkage)
      ->check(CLI::IsMember({"average", "complete", "single"}))
      ->capture_default_str();
  c_conf->add_option("--cut", conf.cut, "Dendrogram height for flat clusters")->capture_default_str();
  c_conf->add_option("--empty-rule", conf.empty_rule, "Drop labels whose row and/or column is empty")
      ->check(CLI::IsMember({"and", "or"}))
      ->capture_default_str();

  DiscoverArgs disc;
  auto add_discovery_options = [&](CLI::App* c) {
    c->add_option("--hyp", disc.hyp, "Hypothesis transcript (one per language)")
        ->check(CLI::ExistingFile);
    c->add_option("--truth", disc.truth, "True inventory (one per language)")
        ->check(CLI::ExistingFile);
    c->add_option("--ref", disc.ref, "Reference transcript (one per language)")
        ->check(CLI::ExistingFile);
    c->add_option("--language", disc.language, "Language names (default: --hyp file stems)");
    c->add_flag("--exclusive", disc.exclusive, "Require frequency strictly above the threshold");
    c->add_option("--min-from", disc.min_from, "Transcripts that define 'min': ref or hyp")
        ->check(CLI::IsMember({"ref", "hyp"}))
        ->capture_default_str();
  };
  auto* c_disc = app.add_subcommand("discover", "Inventory discovery scored against true inventories");
  add_discovery_options(c_disc);
  c_disc->add_option("--threshold", disc.thresholds, "Relative frequency or 'min'");
  c_disc->add_option("--counts", disc.counts, "CSV Language,TP,FP,FN to score directly")
      ->check(CLI::ExistingFile);

  auto* c_sweep = app.add_subcommand("sweep", "Discovery scores over a list of thresholds");
  add_discovery_options(c_sweep);
  c_sweep->add_option("--thresholds", disc.thresholds, "Thresholds (default: min 1e-4 1e-3 2e-3 4e-3)");
  c_sweep->add_option("--system", disc.system, "System name for the table")->capture_default_str();

  FeaturesArgs feat;
  auto* c_feat = app.add_subcommand("features", "Per-articulatory-category breakdown");
  c_feat->add_option("--symbols", feat.symbols, "per_symbol.csv from discover")
      ->required()
      ->check(CLI::ExistingFile);
  c_feat->add_option("--features", feat.features, "Feature table CSV (default: built in)")
      ->check(CLI::ExistingFile);

  CorrelateArgs corr;
  auto* c_corr = app.add_subcommand("correlate", "Pearson correlation with extrinsic measures");
  c_corr->add_option("--symbols", corr.symbols)->required()->check(CLI::ExistingFile);
  c_corr->add_option("--extrinsic", corr.extrinsic, "CSV symbol,phoible_pct,aos_pct,aoa_rank")
      ->required()
      ->check(CLI::ExistingFile);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run the noisy channel over a reference");
  c_sim->add_option("--ref", sim.ref, "Reference transcript")->check(CLI::ExistingFile);
  c_sim->add_option("--channel", sim.channel, "Channel model or preset JSON")
      ->required()
      ->check(CLI::ExistingFile);
  c_sim->add_option("--tokens", sim.tokens, "Synthesize a reference of this many phones");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!g.symbol_table.empty()) {
      ctx.classes = ctx.load_csv(g.symbol_table, SymbolClassTable::from_csv);
    }
    int rc = kOk;
    if (c_tok->parsed()) rc = cmd_tokenize(ctx, tok);
    else if (c_score->parsed()) rc = cmd_score(ctx, sc);
    else if (c_conf->parsed()) rc = cmd_confusions(ctx, conf);
    else if (c_disc->parsed()) rc = cmd_discover(ctx, disc);
    else if (c_sweep->parsed()) rc = cmd_sweep(ctx, disc);
    else if (c_feat->parsed()) rc = cmd_features(ctx, feat);
    else if (c_corr->parsed()) rc = cmd_correlate(ctx, corr);
    else if (c_sim->parsed()) rc = cmd_simulate(ctx, sim, seed_opt->count() > 0);
    for (const auto& w : ctx.warnings) err << "warning: " << w << "\n";
    return rc;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace phonodisc::cli

#endif  // PHONODISC_TOOLS_CLI_HPP
