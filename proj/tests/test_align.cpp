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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phonodisc.hpp"

namespace phonodisc {
namespace {

using Seq = std::vector<std::string>;

Seq seq(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

TEST(Align, MatchesRecursiveOracleOnRandomPairs) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 3000; ++i) {
    std::vector<int> a(rng() % 9);
    std::vector<int> b(rng() % 9);
    for (auto& x : a) x = static_cast<int>(rng() % 3);
    for (auto& x : b) x = static_cast<int>(rng() % 3);
    const auto al = align(a, b);
    ASSERT_EQ(static_cast<int>(al.distance()), oracle::edit_distance(a, b));
    ASSERT_EQ(al.replay_ref(), a);
    ASSERT_EQ(al.replay_hyp(), b);
    ASSERT_EQ(al.ref_length, a.size());
    ASSERT_EQ(al.hyp_length, b.size());
  }
}

TEST(Align, DistanceIsAMetric) {
  std::mt19937_64 rng(2);
  auto draw = [&] {
    std::vector<int> v(rng() % 7);
    for (auto& x : v) x = static_cast<int>(rng() % 3);
    return v;
  };
  for (int i = 0; i < 500; ++i) {
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    const auto ab = align(a, b).distance();
    EXPECT_EQ(ab, align(b, a).distance());
    EXPECT_EQ(align(a, a).distance(), 0u);
    EXPECT_LE(align(a, c).distance(), ab + align(b, c).distance());
  }
}

TEST(Align, TiesPreferSubstitutionThenDeletion) {
  // "a b" -> "c": sub+del either way; the traceback takes the diagonal at
  // the end, so b is substituted and a deleted.
  const auto al = align(seq({"a", "b"}), seq({"c"}));
  ASSERT_EQ(al.ops.size(), 2u);
  EXPECT_EQ(al.ops[0], EditOp<std::string>::deletion("a"));
  EXPECT_EQ(al.ops[1], EditOp<std::string>::substitution("b", "c"));

  const auto al2 = align(seq({"a"}), seq({"b", "c"}));
  ASSERT_EQ(al2.ops.size(), 2u);
  EXPECT_EQ(al2.ops[0].kind, EditKind::kInsertion);
  EXPECT_EQ(al2.ops[1], EditOp<std::string>::substitution("a", "c"));
}

TEST(Align, EmptySides) {
  EXPECT_EQ(align(seq({}), seq({"a", "b"})).count(EditKind::kInsertion), 2u);
  EXPECT_EQ(align(seq({"a"}), seq({})).count(EditKind::kDeletion), 1u);
  EXPECT_TRUE(align(seq({}), seq({})).ops.empty());
}

TEST(ErrorRate, PooledOverUtterances) {
  // 1 error over 1 ref symbol and 0 errors over 9: pooled 10%, not 50%.
  const auto r = error_rate<std::string>(
      {{seq({"a"}), seq({"b"})}, {seq({"a", "b", "c", "d", "e", "f", "g", "h", "i"}),
                                   seq({"a", "b", "c", "d", "e", "f", "g", "h", "i"})}});
  EXPECT_DOUBLE_EQ(r.error_rate, 0.1);
  EXPECT_EQ(r.substitutions, 1u);
  EXPECT_DOUBLE_EQ(r.sub_share, 1.0);
}

TEST(ErrorRate, InsertionsCanExceedOne) {
  const auto r = error_rate<std::string>({{seq({"a"}), seq({"x", "a", "y", "z"})}});
  EXPECT_DOUBLE_EQ(r.error_rate, 3.0);
  EXPECT_DOUBLE_EQ(r.ins_share, 1.0);
}

TEST(ErrorRate, EmptyReference) {
  EXPECT_DOUBLE_EQ(error_rate<std::string>({{seq({}), seq({})}}).error_rate, 0.0);
  try {
    error_rate<std::string>({{seq({}), seq({"a"})}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedRate);
  }
}

TEST(ErrorRate, ToneDeletionAtBothLevels) {
  const Transcript ref = parse_transcript("u\ta˥ b\n", "x");
  const Transcript hyp = parse_transcript("u\ta b\n", "x");
  const ErrorReport p = per(ref, hyp);
  const ErrorReport t = pter(ref, hyp);
  EXPECT_EQ(p.substitutions, 1u);
  EXPECT_DOUBLE_EQ(p.error_rate, 0.5);
  EXPECT_EQ(t.deletions, 1u);
  EXPECT_EQ(t.ref_length, 3u);
  EXPECT_DOUBLE_EQ(t.error_rate, 1.0 / 3.0);
  EXPECT_EQ(p.unit, "phone");
  EXPECT_EQ(t.unit, "phone-token");
}

TEST(Pairing, ByIdInReferenceOrder) {
  const Transcript ref = parse_transcript("u2\ta\nu1\tb\n", "x");
  const Transcript hyp = parse_transcript("u1\tb\nu2\ta\n", "x");
  const auto pairs = pair_utterances(ref, hyp);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].ref->id, "u2");
  EXPECT_EQ(pairs[0].hyp->id, "u2");
  EXPECT_DOUBLE_EQ(per(ref, hyp).error_rate, 0.0);
}

TEST(Pairing, MissingIdsAreListed) {
  const Transcript ref = parse_transcript("u1\ta\nu2\tb\n", "x");
  const Transcript hyp = parse_transcript("u1\ta\nu3\tb\n", "x");
  try {
    per(ref, hyp);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingUtterance);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("u2"), std::string::npos);
    EXPECT_NE(msg.find("u3"), std::string::npos);
  }
}

}  // namespace
}  // namespace phonodisc
