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

// Confusion-matrix analysis: accumulation from alignments, count pruning,
// row normalization, Jensen-Shannon distances, agglomerative clustering and a
// 2-D embedding of the resulting distance matrix.

#ifndef PHONODISC_CONFUSION_HPP
#define PHONODISC_CONFUSION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phonodisc/align.hpp"
#include "phonodisc/csv.hpp"
#include "phonodisc/error.hpp"

namespace phonodisc {

class ConfusionMatrix {
 public:
  using Key = std::pair<std::string, std::string>;

  void add_label(const std::string& s) {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), s);
    if (it == labels_.end() || *it != s) labels_.insert(it, s);
  }

  void add(const std::string& ref, const std::string& hyp, std::uint64_t n = 1) {
    add_label(ref);
    add_label(hyp);
    if (n > 0) counts_[{ref, hyp}] += n;
  }

  std::uint64_t count(const std::string& ref, const std::string& hyp) const {
    auto it = counts_.find({ref, hyp});
    return it == counts_.end() ? 0 : it->second;
  }

  /// Sorted label set.
  const std::vector<std::string>& labels() const { return labels_; }
  /// Non-zero cells only.
  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  std::uint64_t offdiag_row_sum(const std::string& ref) const {
    std::uint64_t s = 0;
    for (auto it = counts_.lower_bound({ref, std::string()});
         it != counts_.end() && it->first.first == ref; ++it) {
      if (it->first.second != ref) s += it->second;
    }
    return s;
  }

  std::uint64_t offdiag_col_sum(const std::string& hyp) const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : counts_) {
      if (k.second == hyp && k.first != hyp) s += v;
    }
    return s;
  }

  std::uint64_t offdiag_mass() const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : counts_) {
      if (k.first != k.second) s += v;
    }
    return s;
  }

  std::size_t offdiag_types() const {
    return static_cast<std::size_t>(std::count_if(
        counts_.begin(), counts_.end(), [](const auto& kv) { return kv.first.first != kv.first.second; }));
  }

  void erase(const Key& k) { counts_.erase(k); }

  void remove_label(const std::string& s) {
    labels_.erase(std::remove(labels_.begin(), labels_.end(), s), labels_.end());
    for (auto it = counts_.begin(); it != counts_.end();) {
      if (it->first.first == s || it->first.second == s) {
        it = counts_.erase(it);
      } else {
        ++it;
      }
    }
  }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> labels_;
  std::map<Key, std::uint64_t> counts_;
};

/// Matches land on the diagonal, substitutions off it. Insertions and
/// deletions have no counterpart symbol and are not counted.
inline ConfusionMatrix accumulate_confusions(std::span<const Alignment<std::string>> alignments) {
  ConfusionMatrix m;
  for (const auto& a : alignments) {
    for (const auto& op : a.ops) {
      if (op.kind == EditKind::kMatch || op.kind == EditKind::kSubstitution) {
        m.add(*op.ref, *op.hyp);
      }
    }
  }
  return m;
}

inline ConfusionMatrix accumulate_confusions(const std::vector<Alignment<std::string>>& alignments) {
  return accumulate_confusions(std::span<const Alignment<std::string>>(alignments));
}

// Which labels count as empty after thresholding.
enum class EmptyRule {
  kRowAndColumn,  // off-diagonal row and column both empty
  kRowOrColumn,   // either one empty; applied until nothing changes
};

struct PruneSummary {
  double removed_mass_fraction = 0.0;
  double removed_type_fraction = 0.0;
  std::vector<std::string> kept_labels;
  std::vector<std::string> removed_labels;
};

struct PruneResult {
  ConfusionMatrix matrix;
  PruneSummary summary;
};

/// Zeroes off-diagonal cells below `min_count`, then drops labels left with
/// empty confusion rows/columns. min_count == 0 leaves the matrix untouched.
inline PruneResult prune(const ConfusionMatrix& input, std::uint64_t min_count,
                         EmptyRule rule = EmptyRule::kRowAndColumn) {
  PruneResult out{input, {}};
  if (min_count == 0) {
    out.summary.kept_labels = input.labels();
    return out;
  }
  ConfusionMatrix& m = out.matrix;
  const std::uint64_t mass_before = input.offdiag_mass();
  const std::size_t types_before = input.offdiag_types();

  std::vector<ConfusionMatrix::Key> low;
  for (const auto& [k, v] : m.counts()) {
    if (k.first != k.second && v < min_count) low.push_back(k);
  }
  for (const auto& k : low) m.erase(k);

  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<std::string> labels = m.labels();
    for (const auto& s : labels) {
      const bool row_empty = m.offdiag_row_sum(s) == 0;
      const bool col_empty = m.offdiag_col_sum(s) == 0;
      const bool drop = rule == EmptyRule::kRowAndColumn ? (row_empty && col_empty)
                                                         : (row_empty || col_empty);
      if (drop) {
        m.remove_label(s);
        out.summary.removed_labels.push_back(s);
        changed = rule == EmptyRule::kRowOrColumn;
      }
    }
  }
  std::sort(out.summary.removed_labels.begin(), out.summary.removed_labels.end());
  out.summary.kept_labels = m.labels();
  if (mass_before > 0) {
    out.summary.removed_mass_fraction =
        static_cast<double>(mass_before - m.offdiag_mass()) / static_cast<double>(mass_before);
  }
  if (types_before > 0) {
    out.summary.removed_type_fraction =
        static_cast<double>(types_before - m.offdiag_types()) / static_cast<double>(types_before);
  }
  return out;
}

struct RowStochasticMatrix {
  std::vector<std::string> labels;                     // columns
  std::map<std::string, std::vector<double>> rows;     // keyed by reference symbol
};

enum class RowPolicy {
  kAllLabels,   // every label must have a positive row
  kSkipEmpty,   // labels without confusions get no row
};

/// Divides each off-diagonal row by its sum; the diagonal is zeroed so a row
/// is the distribution of what the symbol was mistaken for.
inline RowStochasticMatrix row_normalize(const ConfusionMatrix& m,
                                         RowPolicy policy = RowPolicy::kAllLabels) {
  RowStochasticMatrix out;
  out.labels = m.labels();
  for (const auto& ref : out.labels) {
    const std::uint64_t sum = m.offdiag_row_sum(ref);
    if (sum == 0) {
      if (policy == RowPolicy::kSkipEmpty) continue;
      throw Error(ErrorKind::kDegenerate, "zero-sum confusion row for '" + ref + "'");
    }
    std::vector<double> row(out.labels.size(), 0.0);
    for (std::size_t j = 0; j < out.labels.size(); ++j) {
      if (out.labels[j] == ref) continue;
      row[j] = static_cast<double>(m.count(ref, out.labels[j])) / static_cast<double>(sum);
    }
    out.rows.emplace(ref, std::move(row));
  }
  return out;
}

inline constexpr double kDistributionTolerance = 1e-9;

/// Jensen-Shannon divergence with base-2 logarithms, in [0, 1].
inline double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::kInvalidDistribution, "jsd: length mismatch");
  }
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0)) {
      throw Error(ErrorKind::kInvalidDistribution, "jsd: negative or NaN probability");
    }
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > kDistributionTolerance || std::abs(sq - 1.0) > kDistributionTolerance) {
    throw Error(ErrorKind::kInvalidDistribution, "jsd: input does not sum to 1");
  }
  // Each term is symmetric in (p_i, q_i), so jsd(p, q) == jsd(q, p) bit for bit.
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double mid = 0.5 * (p[i] + q[i]);
    double term = 0.0;
    if (p[i] > 0.0) term += p[i] * std::log2(p[i] / mid);
    if (q[i] > 0.0) term += q[i] * std::log2(q[i] / mid);
    d += term;
  }
  return std::clamp(0.5 * d, 0.0, 1.0);
}

inline double jsd(const std::vector<double>& p, const std::vector<double>& q) {
  return jsd(std::span<const double>(p), std::span<const double>(q));
}

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major, labels.size() squared

  std::size_t size() const { return labels.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * labels.size() + j]; }

  static DistanceMatrix zeros(std::vector<std::string> labels) {
    DistanceMatrix d;
    d.values.assign(labels.size() * labels.size(), 0.0);
    d.labels = std::move(labels);
    return d;
  }
};

/// Pairwise JSD between the rows, labelled by row symbol.
inline DistanceMatrix distance_matrix(const RowStochasticMatrix& rows) {
  if (rows.rows.size() < 2) {
    throw Error(ErrorKind::kTooFewLabels, "distance_matrix: need at least 2 rows");
  }
  std::vector<std::string> labels;
  std::vector<const std::vector<double>*> vecs;
  for (const auto& [k, v] : rows.rows) {
    labels.push_back(k);
    vecs.push_back(&v);
  }
  DistanceMatrix d = DistanceMatrix::zeros(std::move(labels));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double v = jsd(*vecs[i], *vecs[j]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

enum class Linkage { kAverage, kComplete, kSingle };

inline std::string_view to_string(Linkage l) {
  switch (l) {
    case Linkage::kAverage: return "average";
    case Linkage::kComplete: return "complete";
    case Linkage::kSingle: return "single";
  }
  return "average";
}

inline std::optional<Linkage> linkage_from_string(std::string_view s) {
  for (auto l : {Linkage::kAverage, Linkage::kComplete, Linkage::kSingle}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

struct Merge {
  std::size_t a = 0;  // cluster ids: leaves are 0..n-1, merge k creates n+k
  std::size_t b = 0;
  double height = 0.0;
  std::size_t id = 0;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
};

/// Heights closer than this are treated as ties.
inline constexpr double kMergeTieTolerance = 1e-12;

/// Agglomerative clustering with Lance-Williams updates. Ties go to the pair
/// whose (smallest member label, smallest member label) pair sorts first.
inline Dendrogram agglomerative_cluster(const DistanceMatrix& dist,
                                        Linkage linkage = Linkage::kAverage) {
  const std::size_t n = dist.size();
  Dendrogram out;
  out.leaves = dist.labels;
  if (n < 2) return out;

  struct Cluster {
    std::size_t id;
    std::size_t size;
    std::string min_label;
  };
  std::vector<Cluster> active;
  for (std::size_t i = 0; i < n; ++i) active.push_back({i, 1, dist.labels[i]});
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = dist(i, j);
  }

  double last = 0.0;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = std::numeric_limits<double>::infinity();
    auto key = [&](std::size_t i, std::size_t j) {
      const auto& x = active[i].min_label;
      const auto& y = active[j].min_label;
      return x < y ? std::make_pair(x, y) : std::make_pair(y, x);
    };
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double v = d[i][j];
        const bool better = v < best - kMergeTieTolerance;
        const bool tie = !better && std::abs(v - best) <= kMergeTieTolerance && key(i, j) < key(bi, bj);
        if (better || tie) {
          best = std::min(best, v);
          bi = i;
          bj = j;
        }
      }
    }
    const double height = std::max(d[bi][bj], last);
    last = height;
    const std::size_t new_id = n + step;
    out.merges.push_back({std::min(active[bi].id, active[bj].id),
                          std::max(active[bi].id, active[bj].id), height, new_id});

    const double na = static_cast<double>(active[bi].size);
    const double nb = static_cast<double>(active[bj].size);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == bi || k == bj) continue;
      double v = 0.0;
      switch (linkage) {
        case Linkage::kAverage: v = (na * d[bi][k] + nb * d[bj][k]) / (na + nb); break;
        case Linkage::kComplete: v = std::max(d[bi][k], d[bj][k]); break;
        case Linkage::kSingle: v = std::min(d[bi][k], d[bj][k]); break;
      }
      d[bi][k] = v;
      d[k][bi] = v;
    }
    active[bi] = {new_id, active[bi].size + active[bj].size,
                  std::min(active[bi].min_label, active[bj].min_label)};
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(bj));
    for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return out;
}

/// Cuts the tree: merges below `height` are joined, merges at or above it
/// separate clusters. Clusters are sorted, each internally sorted.
inline std::vector<std::vector<std::string>> flat_clusters(const Dendrogram& dendro,
                                                           double height) {
  const std::size_t n = dendro.leaves.size();
  std::vector<std::size_t> parent(n + dendro.merges.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : dendro.merges) {
    if (m.height < height) {
      parent[find(m.a)] = m.id;
      parent[find(m.b)] = m.id;
    }
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(dendro.leaves[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::string newick_label(const std::string& s) {
  if (s.find_first_of(" ()[]':;,\t\n") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace detail

/// Newick string; branch lengths are height differences between a node and
/// its parent (leaves sit at height 0).
inline std::string to_newick(const Dendrogram& dendro) {
  const std::size_t n = dendro.leaves.size();
  if (n == 0) return ";";
  if (dendro.merges.empty()) return detail::newick_label(dendro.leaves[0]) + ";";
  std::vector<double> heights(n + dendro.merges.size(), 0.0);
  for (const auto& m : dendro.merges) heights[m.id] = m.height;
  std::function<std::string(std::size_t)> render = [&](std::size_t id) -> std::string {
    if (id < n) return detail::newick_label(dendro.leaves[id]);
    const Merge& m = dendro.merges[id - n];
    return "(" + render(m.a) + ":" + csv::format_double(m.height - heights[m.a]) + "," +
           render(m.b) + ":" + csv::format_double(m.height - heights[m.b]) + ")";
  };
  return render(dendro.merges.back().id) + ";";
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Metric MDS embedding: classical scaling for the start configuration, a
/// seeded jitter, then SMACOF stress majorization. Same seed and input give
/// bit-identical output.
inline std::map<std::string, Point2> project_2d(const DistanceMatrix& dist, std::uint64_t seed,
                                                int iterations = 300) {
  const std::size_t n = dist.size();
  if (n < 3) throw Error(ErrorKind::kTooFewLabels, "project_2d: need at least 3 labels");
  const auto ni = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd delta(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dist(i, j);
    }
  }

  // Classical scaling: top two eigenpairs of the double-centred squared distances.
  const Eigen::MatrixXd sq = delta.array().square().matrix();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(ni, ni) - Eigen::MatrixXd::Constant(ni, ni, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd b = -0.5 * centering * sq * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  Eigen::MatrixXd x(ni, 2);
  for (int k = 0; k < 2; ++k) {
    const Eigen::Index col = ni - 1 - k;
    const double lambda = std::max(eig.eigenvalues()(col), 0.0);
    x.col(k) = eig.eigenvectors().col(col) * std::sqrt(lambda);
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < dist.values.size(); ++i) scale += dist.values[i];
  scale = scale > 0.0 ? scale / static_cast<double>(n * n) : 1.0;
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x(i, k) += (u - 0.5) * 1e-3 * scale;
    }
  }

  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd bx = Eigen::MatrixXd::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
      for (Eigen::Index j = 0; j < ni; ++j) {
        if (i == j) continue;
        const double dij = (x.row(i) - x.row(j)).norm();
        if (dij > 1e-12) bx(i, j) = -delta(i, j) / dij;
      }
      bx(i, i) = -bx.row(i).sum();
    }
    x = (bx * x) / static_cast<double>(n);
  }

  std::map<std::string, Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out[dist.labels[i]] = {x(r, 0), x(r, 1)};
  }
  return out;
}

}  // namespace phonodisc

#endif  // PHONODISC_CONFUSION_HPP
