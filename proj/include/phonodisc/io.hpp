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

// File formats: JSON documents and CSV tables read and written by the CLI.

#ifndef PHONODISC_IO_HPP
#define PHONODISC_IO_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phonodisc/align.hpp"
#include "phonodisc/channel.hpp"
#include "phonodisc/confusion.hpp"
#include "phonodisc/csv.hpp"
#include "phonodisc/discovery.hpp"
#include "phonodisc/error.hpp"
#include "phonodisc/ipa.hpp"

namespace phonodisc::io {

using nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Numbers in paper-style tables: one-decimal percentages, otherwise the
// shortest exact representation of the fraction.
struct NumberStyle {
  bool paper_rounding = false;

  std::string fraction(double v) const {
    return paper_rounding ? format_percent(v) : csv::format_double(v);
  }
};

// ---------------------------------------------------------------------------
// Error reports

inline ordered_json to_json(const ErrorReport& r) {
  ordered_json j;
  j["unit"] = r.unit;
  j["error_rate"] = r.error_rate;
  j["errors"] = {{"ins", r.insertions}, {"del", r.deletions}, {"sub", r.substitutions}};
  j["shares"] = {{"ins", r.ins_share}, {"del", r.del_share}, {"sub", r.sub_share}};
  j["ref_len"] = r.ref_length;
  j["hyp_len"] = r.hyp_length;
  return j;
}

inline ErrorReport error_report_from_json(const ordered_json& j) {
  ErrorReport r;
  r.unit = j.at("unit").get<std::string>();
  r.error_rate = j.at("error_rate").get<double>();
  r.insertions = j.at("errors").at("ins").get<std::size_t>();
  r.deletions = j.at("errors").at("del").get<std::size_t>();
  r.substitutions = j.at("errors").at("sub").get<std::size_t>();
  r.ins_share = j.at("shares").at("ins").get<double>();
  r.del_share = j.at("shares").at("del").get<double>();
  r.sub_share = j.at("shares").at("sub").get<double>();
  r.ref_length = j.at("ref_len").get<std::size_t>();
  r.hyp_length = j.at("hyp_len").get<std::size_t>();
  r.matches = r.ref_length - r.deletions - r.substitutions;
  return r;
}

inline csv::Table error_report_table(const ErrorReport& r, NumberStyle style) {
  csv::Table t;
  t.header = {"unit", "error_rate", "ins", "del", "sub", "ins_share", "del_share", "sub_share",
              "ref_len", "hyp_len"};
  t.rows.push_back({r.unit, style.fraction(r.error_rate), std::to_string(r.insertions),
                    std::to_string(r.deletions), std::to_string(r.substitutions),
                    style.fraction(r.ins_share), style.fraction(r.del_share),
                    style.fraction(r.sub_share), std::to_string(r.ref_length),
                    std::to_string(r.hyp_length)});
  return t;
}

// ---------------------------------------------------------------------------
// Confusion analysis

/// Square CSV: the header row and first column carry labels, rows are
/// reference symbols, columns hypothesized ones.
inline csv::Table confusion_table(const ConfusionMatrix& m) {
  csv::Table t;
  t.header.push_back("");
  for (const auto& l : m.labels()) t.header.push_back(l);
  for (const auto& r : m.labels()) {
    csv::Row row{r};
    for (const auto& c : m.labels()) row.push_back(std::to_string(m.count(r, c)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline ConfusionMatrix confusion_from_table(const csv::Table& t) {
  ConfusionMatrix m;
  for (std::size_t c = 1; c < t.header.size(); ++c) m.add_label(t.header[c]);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 1; c < t.header.size(); ++c) {
      auto v = csv::parse_int(t.rows[r][c]);
      if (!v || *v < 0) throw ParseError(ErrorKind::kParse, "bad count", r + 2, c + 1);
      m.add(t.rows[r][0], t.header[c], static_cast<std::uint64_t>(*v));
    }
  }
  return m;
}

inline ordered_json to_json(const PruneSummary& s, std::uint64_t min_count) {
  ordered_json j;
  j["min_count"] = min_count;
  j["removed_mass_fraction"] = s.removed_mass_fraction;
  j["removed_type_fraction"] = s.removed_type_fraction;
  j["kept_labels"] = s.kept_labels;
  j["removed_labels"] = s.removed_labels;
  return j;
}

inline ordered_json to_json(const Dendrogram& d, Linkage linkage) {
  ordered_json j;
  j["linkage"] = std::string(to_string(linkage));
  j["leaves"] = d.leaves;
  ordered_json merges = ordered_json::array();
  for (const auto& m : d.merges) {
    merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"id", m.id}});
  }
  j["merges"] = std::move(merges);
  j["newick"] = to_newick(d);
  return j;
}

inline Dendrogram dendrogram_from_json(const ordered_json& j) {
  Dendrogram d;
  d.leaves = j.at("leaves").get<std::vector<std::string>>();
  for (const auto& m : j.at("merges")) {
    d.merges.push_back({m.at("a").get<std::size_t>(), m.at("b").get<std::size_t>(),
                        m.at("height").get<double>(), m.at("id").get<std::size_t>()});
  }
  return d;
}

inline csv::Table distance_table(const DistanceMatrix& d) {
  csv::Table t;
  t.header.push_back("");
  for (const auto& l : d.labels) t.header.push_back(l);
  for (std::size_t i = 0; i < d.size(); ++i) {
    csv::Row row{d.labels[i]};
    for (std::size_t j = 0; j < d.size(); ++j) row.push_back(csv::format_double(d(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline csv::Table projection_table(const std::map<std::string, Point2>& pts) {
  csv::Table t;
  t.header = {"label", "x", "y"};
  for (const auto& [l, p] : pts) {
    t.rows.push_back({l, csv::format_double(p.x), csv::format_double(p.y)});
  }
  return t;
}

inline csv::Table clusters_table(const std::vector<std::vector<std::string>>& clusters) {
  csv::Table t;
  t.header = {"label", "cluster"};
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const auto& l : clusters[c]) rows.emplace_back(l, c + 1);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [l, c] : rows) t.rows.push_back({l, std::to_string(c)});
  return t;
}

// ---------------------------------------------------------------------------
// Channel model and simulation log

inline std::map<std::string, double> normalized_keys(const ordered_json& obj) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : obj.items()) out[unicode::nfd(k)] += v.get<double>();
  return out;
}

/// {seed, deletion_prob, insertion_prob, insertion_dist:{sym:p},
///  substitution:{ref:{out:p}}}. deletion_prob may also be an object of
/// per-symbol probabilities with an optional "*" default.
inline ChannelModel channel_from_json(const ordered_json& j) {
  ChannelModel m;
  try {
    m.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("deletion_prob")) {
      const auto& d = j.at("deletion_prob");
      if (d.is_object()) {
        for (const auto& [k, v] : d.items()) {
          if (k == "*") {
            m.deletion_prob = v.get<double>();
          } else {
            m.deletion_overrides[unicode::nfd(k)] = v.get<double>();
          }
        }
      } else {
        m.deletion_prob = d.get<double>();
      }
    }
    m.insertion_prob = j.value("insertion_prob", 0.0);
    if (j.contains("insertion_dist")) m.insertion_dist = normalized_keys(j.at("insertion_dist"));
    if (j.contains("substitution")) {
      for (const auto& [ref, row] : j.at("substitution").items()) {
        m.substitution[unicode::nfd(ref)] = normalized_keys(row);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("channel config: ") + e.what());
  }
  m.validate();
  return m;
}

inline ordered_json to_json(const ChannelModel& m) {
  ordered_json j;
  j["seed"] = m.seed;
  if (m.deletion_overrides.empty()) {
    j["deletion_prob"] = m.deletion_prob;
  } else {
    ordered_json d;
    d["*"] = m.deletion_prob;
    for (const auto& [k, v] : m.deletion_overrides) d[k] = v;
    j["deletion_prob"] = d;
  }
  j["insertion_prob"] = m.insertion_prob;
  j["insertion_dist"] = m.insertion_dist;
  ordered_json sub = ordered_json::object();
  for (const auto& [k, row] : m.substitution) sub[k] = row;
  j["substitution"] = sub;
  return j;
}

/// Source block of a preset: how to synthesize a reference corpus.
struct SourceSpec {
  std::map<std::string, double> distribution;
  std::size_t utterance_length = 20;
  std::string language = "synthetic";
};

struct Preset {
  ChannelModel channel;
  std::optional<SourceSpec> source;
  std::vector<std::vector<std::string>> planted_clusters;
};

inline Preset preset_from_json(const ordered_json& j) {
  Preset p;
  p.channel = channel_from_json(j);
  if (j.contains("source")) {
    const auto& s = j.at("source");
    SourceSpec spec;
    spec.distribution = normalized_keys(s.at("distribution"));
    spec.utterance_length = s.value("utterance_length", std::size_t{20});
    spec.language = s.value("language", std::string("synthetic"));
    p.source = std::move(spec);
  }
  if (j.contains("planted_clusters")) {
    for (const auto& c : j.at("planted_clusters")) {
      std::vector<std::string> members;
      for (const auto& s : c) members.push_back(unicode::nfd(s.get<std::string>()));
      p.planted_clusters.push_back(std::move(members));
    }
  }
  return p;
}

inline Preset load_preset(const std::string& path) {
  try {
    return preset_from_json(ordered_json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
}

/// One JSON object per applied edit.
inline void write_simulation_log(std::ostream& out, const SimulationLog& log) {
  for (const auto& u : log.utterances) {
    for (std::size_t i = 0; i < u.ops.size(); ++i) {
      const auto& op = u.ops[i];
      ordered_json j;
      j["utt"] = u.id;
      j["pos"] = i;
      j["op"] = std::string(to_string(op.kind));
      j["ref"] = op.ref ? ordered_json(*op.ref) : ordered_json(nullptr);
      j["hyp"] = op.hyp ? ordered_json(*op.hyp) : ordered_json(nullptr);
      out << j.dump() << '\n';
    }
  }
}

inline SimulationLog read_simulation_log(std::istream& in) {
  SimulationLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ErrorKind::kParse, e.what(), line_no);
    }
    const auto id = j.at("utt").get<std::string>();
    if (log.utterances.empty() || log.utterances.back().id != id) log.utterances.push_back({id, {}});
    auto kind = edit_kind_from_string(j.at("op").get<std::string>());
    if (!kind) throw ParseError(ErrorKind::kParse, "unknown op", line_no);
    EditOp<std::string> op;
    op.kind = *kind;
    if (!j.at("ref").is_null()) op.ref = j.at("ref").get<std::string>();
    if (!j.at("hyp").is_null()) op.hyp = j.at("hyp").get<std::string>();
    log.utterances.back().ops.push_back(std::move(op));
  }
  return log;
}

// ---------------------------------------------------------------------------
// Discovery tables

inline csv::Table score_table(const std::vector<DiscoveryScore>& scores, NumberStyle style) {
  csv::Table t;
  t.header = {"Language", "TP", "FP", "FN", "Precision", "Recall", "F1"};
  for (const auto& s : scores) {
    t.rows.push_back({s.language, std::to_string(s.tp), std::to_string(s.fp), std::to_string(s.fn),
                      style.fraction(s.precision), style.fraction(s.recall), style.fraction(s.f1)});
  }
  return t;
}

/// Language,TP,FP,FN rows (any further columns ignored).
inline std::vector<DiscoveryScore> parse_count_table(std::istream& in) {
  const csv::Table t = csv::read_table(in);
  static constexpr std::string_view kCols[] = {"Language", "TP", "FP", "FN"};
  std::size_t col[4];
  for (std::size_t i = 0; i < 4; ++i) {
    col[i] = t.column(kCols[i]);
    if (col[i] == csv::Table::npos) {
      throw ParseError(ErrorKind::kParse, "count table missing column '" + std::string(kCols[i]) + "'", 1);
    }
  }
  std::vector<DiscoveryScore> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::uint64_t v[3];
    for (std::size_t i = 0; i < 3; ++i) {
      auto x = csv::parse_int(t.rows[r][col[i + 1]]);
      if (!x || *x < 0) throw ParseError(ErrorKind::kParse, "bad count", r + 2, col[i + 1] + 1);
      v[i] = static_cast<std::uint64_t>(*x);
    }
    out.push_back(DiscoveryScore::from_counts(v[0], v[1], v[2], t.rows[r][col[0]]));
  }
  return out;
}

inline csv::Table sweep_table(const std::string& system, const std::vector<SweepRow>& rows,
                              NumberStyle style) {
  csv::Table t;
  t.header = {"System", "Threshold", "Precision", "Recall", "F1"};
  for (const auto& r : rows) {
    t.rows.push_back({system, r.threshold.label(), style.fraction(r.all.precision),
                      style.fraction(r.all.recall), style.fraction(r.all.f1)});
  }
  return t;
}

inline csv::Table symbol_table(const std::vector<SymbolScore>& rows, NumberStyle style) {
  csv::Table t;
  for (auto h : kSymbolTableHeader) t.header.emplace_back(h);
  for (const auto& s : rows) {
    t.rows.push_back({s.symbol, std::to_string(s.tp), std::to_string(s.fp), std::to_string(s.fn),
                      std::to_string(s.count), style.fraction(s.precision),
                      style.fraction(s.recall), style.fraction(s.f1)});
  }
  return t;
}

inline csv::Table feature_table(const FeatureBreakdown& fb, NumberStyle style) {
  csv::Table t;
  t.header = {"axis", "category", "Languages", "Count", "Prec.", "Recall", "F1"};
  for (const auto& r : fb.rows) {
    t.rows.push_back({r.axis, r.category,
                      std::to_string(r.min_languages) + " - " + std::to_string(r.max_languages),
                      std::to_string(r.count), style.fraction(r.precision),
                      style.fraction(r.recall), style.fraction(r.f1)});
  }
  return t;
}

inline std::string to_string(const csv::Table& t) {
  std::ostringstream out;
  csv::write_table(out, t);
  return out.str();
}

}  // namespace phonodisc::io

#endif  // PHONODISC_IO_HPP
