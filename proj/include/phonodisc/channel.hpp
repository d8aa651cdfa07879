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

// Noisy-channel simulator: turns reference transcripts into synthetic
// recognizer output under planted substitution, deletion and insertion
// probabilities, and logs every edit it applies.
//
// Random numbers come from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniform variates take the top 53 bits of one draw, and the
// stream for utterance i is seeded with splitmix64(seed ^ splitmix64(i)), so
// results are identical across platforms and independent of scheduling.

#ifndef PHONODISC_CHANNEL_HPP
#define PHONODISC_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "phonodisc/align.hpp"
#include "phonodisc/error.hpp"
#include "phonodisc/ipa.hpp"

namespace phonodisc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  /// Draws a key with probability proportional to its value; iteration order
  /// of the map fixes the outcome for a given variate.
  const std::string& categorical(const std::map<std::string, double>& dist) {
    const double u = uniform();
    double cum = 0.0;
    const std::string* last = nullptr;
    for (const auto& [k, p] : dist) {
      if (p <= 0.0) continue;
      cum += p;
      last = &k;
      if (u < cum) return k;
    }
    if (!last) throw Error(ErrorKind::kInvalidArgument, "categorical: empty distribution");
    return *last;
  }

 private:
  std::mt19937_64 engine_;
};

struct ChannelModel {
  std::uint64_t seed = 0;
  double deletion_prob = 0.0;
  std::map<std::string, double> deletion_overrides;  // per-symbol deletion probability
  double insertion_prob = 0.0;
  std::map<std::string, double> insertion_dist;
  std::map<std::string, std::map<std::string, double>> substitution;

  double deletion_for(const std::string& sym) const {
    auto it = deletion_overrides.find(sym);
    return it == deletion_overrides.end() ? deletion_prob : it->second;
  }

  /// Rows that keep every symbol unchanged.
  static ChannelModel identity(const std::vector<std::string>& symbols, std::uint64_t seed = 0) {
    ChannelModel m;
    m.seed = seed;
    for (const auto& s : symbols) m.substitution[s] = {{s, 1.0}};
    return m;
  }

  void validate() const {
    auto check_prob = [](double p, const std::string& what) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::kInvalidArgument, what + " must lie in [0, 1]");
      }
    };
    auto check_dist = [&](const std::map<std::string, double>& d, const std::string& what) {
      double sum = 0.0;
      for (const auto& [k, p] : d) {
        check_prob(p, what + " entry '" + k + "'");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::kInvalidDistribution, what + " sums to " + std::to_string(sum));
      }
    };
    check_prob(deletion_prob, "deletion_prob");
    check_prob(insertion_prob, "insertion_prob");
    for (const auto& [k, p] : deletion_overrides) check_prob(p, "deletion_prob['" + k + "']");
    if (insertion_prob > 0.0) check_dist(insertion_dist, "insertion_dist");
    for (const auto& [ref, row] : substitution) check_dist(row, "substitution row '" + ref + "'");
  }

  /// Every symbol the channel can emit, for pre-tokenization.
  std::vector<std::string> output_symbols() const {
    std::set<std::string> out;
    for (const auto& [k, p] : insertion_dist) out.insert(k);
    for (const auto& [ref, row] : substitution) {
      for (const auto& [k, p] : row) out.insert(k);
    }
    return {out.begin(), out.end()};
  }
};

struct UtteranceLog {
  std::string id;
  std::vector<EditOp<std::string>> ops;
};

struct SimulationLog {
  std::vector<UtteranceLog> utterances;

  std::size_t count(EditKind k) const {
    std::size_t n = 0;
    for (const auto& u : utterances) {
      for (const auto& op : u.ops) n += op.kind == k;
    }
    return n;
  }

  /// Planted (ref, hyp) pairs for matches and substitutions.
  std::map<std::pair<std::string, std::string>, std::uint64_t> confusion_counts() const {
    std::map<std::pair<std::string, std::string>, std::uint64_t> out;
    for (const auto& u : utterances) {
      for (const auto& op : u.ops) {
        if (op.kind == EditKind::kMatch || op.kind == EditKind::kSubstitution) {
          ++out[{*op.ref, *op.hyp}];
        }
      }
    }
    return out;
  }

  /// Emitted hypothesis symbol counts.
  std::map<std::string, std::uint64_t> realized_counts() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& u : utterances) {
      for (const auto& op : u.ops) {
        if (op.hyp) ++out[*op.hyp];
      }
    }
    return out;
  }
};

struct SimulationResult {
  Transcript hyp;
  SimulationLog log;
};

/// Per reference position: maybe insert (Bernoulli, then a draw from the
/// insertion distribution), then delete (Bernoulli) or emit a draw from the
/// symbol's substitution row. One more insertion slot follows the last symbol.
inline SimulationResult simulate(const Transcript& ref, const ChannelModel& model,
                                 const SymbolClassTable& table = SymbolClassTable::builtin()) {
  model.validate();
  std::map<std::string, Phone> phones;
  for (const auto& s : model.output_symbols()) phones.emplace(s, tokenize_phone(s, table));

  SimulationResult out;
  out.hyp.language = ref.language;
  for (std::size_t ui = 0; ui < ref.utterances.size(); ++ui) {
    const Utterance& utt = ref.utterances[ui];
    Rng rng(derive_seed(model.seed, ui));
    Utterance hyp{utt.id, {}};
    UtteranceLog log{utt.id, {}};
    auto maybe_insert = [&] {
      if (rng.bernoulli(model.insertion_prob)) {
        const std::string& s = rng.categorical(model.insertion_dist);
        hyp.phones.push_back(phones.at(s));
        log.ops.push_back(EditOp<std::string>::insertion(s));
      }
    };
    for (const auto& phone : utt.phones) {
      const std::string& sym = phone.text();
      auto row = model.substitution.find(sym);
      if (row == model.substitution.end()) {
        throw Error(ErrorKind::kUnknownSymbol,
                    "channel has no substitution row for '" + sym + "' (utterance " + utt.id + ")");
      }
      maybe_insert();
      if (rng.bernoulli(model.deletion_for(sym))) {
        log.ops.push_back(EditOp<std::string>::deletion(sym));
        continue;
      }
      const std::string& out_sym = rng.categorical(row->second);
      hyp.phones.push_back(phones.at(out_sym));
      log.ops.push_back(out_sym == sym ? EditOp<std::string>::match(sym)
                                       : EditOp<std::string>::substitution(sym, out_sym));
    }
    maybe_insert();
    out.hyp.utterances.push_back(std::move(hyp));
    out.log.utterances.push_back(std::move(log));
  }
  return out;
}

/// Synthetic reference: `utterances` lines of `length` phones drawn i.i.d.
/// from `dist`.
inline Transcript sample_reference(const std::map<std::string, double>& dist,
                                   std::size_t utterances, std::size_t length,
                                   std::uint64_t seed, std::string language = "synthetic",
                                   const SymbolClassTable& table = SymbolClassTable::builtin()) {
  std::map<std::string, Phone> phones;
  double total = 0.0;
  for (const auto& [s, p] : dist) {
    if (!(p >= 0.0)) throw Error(ErrorKind::kInvalidDistribution, "negative weight for '" + s + "'");
    phones.emplace(s, tokenize_phone(s, table));
    total += p;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidDistribution, "sample_reference: empty distribution");
  std::map<std::string, double> norm;
  for (const auto& [s, p] : dist) norm[s] = p / total;
  Transcript t;
  t.language = std::move(language);
  const int width = static_cast<int>(std::to_string(utterances).size());
  for (std::size_t i = 0; i < utterances; ++i) {
    Rng rng(derive_seed(seed, i));
    Utterance u;
    std::string num = std::to_string(i + 1);
    u.id = "utt" + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num;
    for (std::size_t j = 0; j < length; ++j) u.phones.push_back(phones.at(rng.categorical(norm)));
    t.utterances.push_back(std::move(u));
  }
  return t;
}

}  // namespace phonodisc

#endif  // PHONODISC_CHANNEL_HPP
