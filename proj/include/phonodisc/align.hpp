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

// Unit-cost Levenshtein alignment and the PER / PTER error reports built on it.

#ifndef PHONODISC_ALIGN_HPP
#define PHONODISC_ALIGN_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phonodisc/error.hpp"
#include "phonodisc/ipa.hpp"

namespace phonodisc {

enum class EditKind { kMatch, kSubstitution, kInsertion, kDeletion };

inline std::string_view to_string(EditKind k) {
  switch (k) {
    case EditKind::kMatch: return "match";
    case EditKind::kSubstitution: return "sub";
    case EditKind::kInsertion: return "ins";
    case EditKind::kDeletion: return "del";
  }
  return "match";
}

inline std::optional<EditKind> edit_kind_from_string(std::string_view s) {
  for (auto k : {EditKind::kMatch, EditKind::kSubstitution, EditKind::kInsertion,
                 EditKind::kDeletion}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

template <typename Symbol>
struct EditOp {
  EditKind kind = EditKind::kMatch;
  std::optional<Symbol> ref;
  std::optional<Symbol> hyp;

  static EditOp match(Symbol s) { return {EditKind::kMatch, s, s}; }
  static EditOp substitution(Symbol r, Symbol h) {
    return {EditKind::kSubstitution, std::move(r), std::move(h)};
  }
  static EditOp insertion(Symbol h) { return {EditKind::kInsertion, std::nullopt, std::move(h)}; }
  static EditOp deletion(Symbol r) { return {EditKind::kDeletion, std::move(r), std::nullopt}; }

  bool operator==(const EditOp&) const = default;
};

template <typename Symbol>
struct Alignment {
  std::vector<EditOp<Symbol>> ops;
  std::size_t ref_length = 0;
  std::size_t hyp_length = 0;

  std::size_t count(EditKind k) const {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(), [k](const auto& op) { return op.kind == k; }));
  }
  std::size_t distance() const { return ops.size() - count(EditKind::kMatch); }

  // Reference (resp. hypothesis) sequence read back from the ops.
  std::vector<Symbol> replay_ref() const {
    std::vector<Symbol> out;
    for (const auto& op : ops) {
      if (op.ref) out.push_back(*op.ref);
    }
    return out;
  }
  std::vector<Symbol> replay_hyp() const {
    std::vector<Symbol> out;
    for (const auto& op : ops) {
      if (op.hyp) out.push_back(*op.hyp);
    }
    return out;
  }
};

/// Minimum-cost alignment with unit insertion/deletion/substitution costs.
/// On equal cost the traceback prefers match/substitution, then deletion,
/// then insertion.
template <typename Symbol>
Alignment<Symbol> align(std::span<const Symbol> ref, std::span<const Symbol> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return cost[i * width + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0u : 1u);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment<Symbol> out;
  out.ref_length = n;
  out.hyp_length = m;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0u : 1u)) {
        out.ops.push_back(same ? EditOp<Symbol>::match(ref[i - 1])
                               : EditOp<Symbol>::substitution(ref[i - 1], hyp[j - 1]));
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      out.ops.push_back(EditOp<Symbol>::deletion(ref[i - 1]));
      --i;
    } else {
      out.ops.push_back(EditOp<Symbol>::insertion(hyp[j - 1]));
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

template <typename Symbol>
Alignment<Symbol> align(const std::vector<Symbol>& ref, const std::vector<Symbol>& hyp) {
  return align(std::span<const Symbol>(ref), std::span<const Symbol>(hyp));
}

/// Corpus-level error counts. The rate is pooled (sum of errors over sum of
/// reference lengths) and is not clamped: insertions can push it past 1.
struct ErrorReport {
  std::string unit;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t matches = 0;
  std::size_t ref_length = 0;
  std::size_t hyp_length = 0;
  double error_rate = 0.0;
  double ins_share = 0.0;
  double del_share = 0.0;
  double sub_share = 0.0;

  std::size_t errors() const { return insertions + deletions + substitutions; }
};

class ErrorAccumulator {
 public:
  template <typename Symbol>
  void add(const Alignment<Symbol>& a) {
    r_.insertions += a.count(EditKind::kInsertion);
    r_.deletions += a.count(EditKind::kDeletion);
    r_.substitutions += a.count(EditKind::kSubstitution);
    r_.matches += a.count(EditKind::kMatch);
    r_.ref_length += a.ref_length;
    r_.hyp_length += a.hyp_length;
  }

  ErrorReport report(std::string unit) const {
    ErrorReport r = r_;
    r.unit = std::move(unit);
    const std::size_t errors = r.errors();
    if (r.ref_length == 0) {
      if (r.hyp_length > 0) {
        throw Error(ErrorKind::kUndefinedRate,
                    "error rate undefined: empty reference with non-empty hypothesis");
      }
      return r;
    }
    r.error_rate = static_cast<double>(errors) / static_cast<double>(r.ref_length);
    if (errors > 0) {
      const auto total = static_cast<double>(errors);
      r.ins_share = static_cast<double>(r.insertions) / total;
      r.del_share = static_cast<double>(r.deletions) / total;
      r.sub_share = static_cast<double>(r.substitutions) / total;
    }
    return r;
  }

 private:
  ErrorReport r_;
};

template <typename Symbol>
ErrorReport error_rate(
    const std::vector<std::pair<std::vector<Symbol>, std::vector<Symbol>>>& pairs,
    std::string unit = "symbol") {
  ErrorAccumulator acc;
  for (const auto& [ref, hyp] : pairs) acc.add(align(ref, hyp));
  return acc.report(std::move(unit));
}

/// Reference/hypothesis utterances matched by id, in reference order.
struct UtterancePair {
  const Utterance* ref;
  const Utterance* hyp;
};

inline std::vector<UtterancePair> pair_utterances(const Transcript& ref, const Transcript& hyp) {
  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const auto& u : hyp.utterances) by_id.emplace(u.id, &u);
  std::vector<UtterancePair> out;
  std::vector<std::string> missing;
  std::unordered_map<std::string_view, bool> in_ref;
  for (const auto& u : ref.utterances) {
    in_ref.emplace(u.id, true);
    auto it = by_id.find(u.id);
    if (it == by_id.end()) {
      missing.push_back(u.id + " (hypothesis)");
    } else {
      out.push_back({&u, it->second});
    }
  }
  for (const auto& u : hyp.utterances) {
    if (!in_ref.count(u.id)) missing.push_back(u.id + " (reference)");
  }
  if (!missing.empty()) {
    std::string msg = "unpaired utterance ids, missing from:";
    for (const auto& id : missing) msg += " " + id;
    throw Error(ErrorKind::kMissingUtterance, msg);
  }
  return out;
}

/// Per-utterance alignments of two transcripts at the given unit.
inline std::vector<Alignment<std::string>> align_transcripts(const Transcript& ref,
                                                             const Transcript& hyp, Unit unit) {
  std::vector<Alignment<std::string>> out;
  for (const auto& p : pair_utterances(ref, hyp)) {
    out.push_back(align(symbols(p.ref->phones, unit), symbols(p.hyp->phones, unit)));
  }
  return out;
}

inline ErrorReport transcript_error_rate(const Transcript& ref, const Transcript& hyp, Unit unit) {
  ErrorAccumulator acc;
  for (const auto& a : align_transcripts(ref, hyp, unit)) acc.add(a);
  return acc.report(std::string(to_string(unit)));
}

/// Phone error rate: whole phones, compared by normalized text.
inline ErrorReport per(const Transcript& ref, const Transcript& hyp) {
  return transcript_error_rate(ref, hyp, Unit::kPhone);
}

/// Phone-token error rate: every modifier symbol aligned as its own token.
inline ErrorReport pter(const Transcript& ref, const Transcript& hyp) {
  return transcript_error_rate(ref, hyp, Unit::kPhoneToken);
}

}  // namespace phonodisc

#endif  // PHONODISC_ALIGN_HPP
