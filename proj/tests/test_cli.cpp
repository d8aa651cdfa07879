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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace phonodisc {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("phonodisc-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  std::string read(const std::string& name) { return io::read_file((dir_ / name).string()); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "phonodisc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string out_dir(const std::string& name = "out") { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, TokenizeStreamsToStdout) {
  const auto t = write("t.txt", "u1\ta˥ b\n");
  EXPECT_EQ(run({"tokenize", t}), 0);
  EXPECT_EQ(out_.str(), "u1\ta\tbase\nu1\t˥\ttone\nu1\tb\tbase\n");
  EXPECT_EQ(run({"--unit", "phone", "tokenize", t}), 0);
  EXPECT_EQ(out_.str(), "u1\ta˥\tbase+tone\nu1\tb\tbase\n");
}

TEST_F(CliTest, ScoreWritesReportsAndTokenUnitIsDefault) {
  const auto ref = write("ref.txt", "u\ta˥\n");
  const auto hyp = write("hyp.txt", "u\ta\n");
  ASSERT_EQ(run({"--out-dir", out_dir(), "score", "--ref", ref, "--hyp", hyp}), 0) << err_.str();
  const auto j = nlohmann::json::parse(read("out/error_report.json"));
  EXPECT_EQ(j.at("unit"), "phone-token");
  EXPECT_EQ(j.at("error_rate"), 0.5);
  EXPECT_EQ(j.at("shares").at("del"), 1.0);
  EXPECT_FALSE(fs::exists(dir_ / "out" / ".phonodisc-staging"));
}

TEST_F(CliTest, ExitCodes) {
  const auto ref = write("ref.txt", "u1\ta b\nu2\tc\n");
  const auto hyp = write("hyp.txt", "u1\ta b\n");
  const auto bad = write("bad.txt", "u1\ta ˥\n");
  EXPECT_EQ(run({"--out-dir", out_dir(), "score", "--ref", ref, "--hyp", hyp}), 3);
  EXPECT_NE(err_.str().find("u2"), std::string::npos);
  EXPECT_EQ(run({"--out-dir", out_dir(), "score", "--ref", bad, "--hyp", hyp}), 2);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
  EXPECT_EQ(run({"--out-dir", out_dir(), "confusions", "--ref", ref, "--hyp", ref}), 4);
  const auto sym = write("s.csv", "symbol,tp,fp,fn,count,precision,recall,f1\na,1,0,0,1,1,1,1\nb,0,1,0,0,0,0,0\n");
  const auto ext = write("e.csv", "symbol,phoible_pct,aos_pct,aoa_rank\na,10,1,1\nb,20,2,2\n");
  EXPECT_EQ(run({"--out-dir", out_dir(), "correlate", "--symbols", sym, "--extrinsic", ext}), 5);
  EXPECT_EQ(run({"score", "--ref", ref}), static_cast<int>(CLI::ExitCodes::RequiredError));
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, FailedRunLeavesNoPartialOutput) {
  const auto hyp = write("hyp.txt", "u\ta b\n");
  const auto inv = write("inv.txt", "a\n");
  const auto bad_inv = write("bad_inv.txt", "ab\n");
  // The second language's inventory fails to parse after the first loaded.
  EXPECT_EQ(run({"--out-dir", out_dir(), "discover", "--threshold", "0.1", "--hyp", hyp, "--truth", inv,
                 "--hyp", hyp, "--truth", bad_inv, "--language", "x", "--language", "y"}),
            2);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "scores.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / ".phonodisc-staging"));
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto ref = write("ref.txt", "u\ta˥ b\n");
  const auto hyp = write("hyp.txt", "u\ta b\n");
  const auto cfg = write("cfg.json", R"({"unit": "phone", "out-dir": ")" + out_dir("from-config") +
                                         R"(", "score": {"ref": ")" + ref + R"("}})");
  ASSERT_EQ(run({"--config", cfg, "score", "--hyp", hyp}), 0) << err_.str();
  EXPECT_EQ(nlohmann::json::parse(read("from-config/error_report.json")).at("unit"), "phone");
  ASSERT_EQ(run({"--config", cfg, "--unit", "phone-token", "score", "--hyp", hyp}), 0) << err_.str();
  EXPECT_EQ(nlohmann::json::parse(read("from-config/error_report.json")).at("unit"), "phone-token");
}

TEST_F(CliTest, DiscoverFromCountsWithPaperRounding) {
  ASSERT_EQ(run({"--paper-rounding", "--out-dir", out_dir(), "discover", "--counts",
                 PHONODISC_TEST_DATA "/table7_counts.csv"}),
            0)
      << err_.str();
  const std::string scores = read("out/scores.csv");
  EXPECT_NE(scores.find("ALL,302,131,146,69.7,67.4,68.6"), std::string::npos);
  EXPECT_NE(scores.find("Cantonese,29,7,4,80.6,87.9,84.1"), std::string::npos);
}

TEST_F(CliTest, DiscoverSweepFeaturesPipeline) {
  const auto ref = write("ref.txt", "u1\ta b a c\nu2\ta b a d\n");
  const auto hyp = write("hyp.txt", "u1\ta b a e\nu2\ta b a a\n");
  const auto inv = write("inv.txt", "a\nb\nc\nd\nm\n");
  ASSERT_EQ(run({"--unit", "phone", "--out-dir", out_dir(), "discover", "--threshold", "min", "--hyp", hyp,
                 "--ref", ref, "--truth", inv, "--language", "toy"}),
            0)
      << err_.str();
  EXPECT_NE(read("out/scores.csv").find("toy,2,1,3"), std::string::npos);
  EXPECT_EQ(parse_inventory(read("out/inventories/toy.txt"), Unit::kPhone, "toy").symbols,
            (std::set<std::string>{"a", "b", "e"}));
  ASSERT_EQ(run({"--out-dir", out_dir("feat"), "features", "--symbols", (dir_ / "out/per_symbol.csv").string()}), 0)
      << err_.str();
  EXPECT_NE(read("feat/features.csv").find("manner,nasal,1 - 1,1,0,0,0"), std::string::npos);
  ASSERT_EQ(run({"--unit", "phone", "--out-dir", out_dir("sw"), "sweep", "--hyp", hyp, "--ref", ref,
                 "--truth", inv, "--system", "toy-system"}),
            0)
      << err_.str();
  EXPECT_EQ(read("sw/sweep.csv").substr(0, 28), "System,Threshold,Precision,R");
  EXPECT_NE(read("sw/sweep.csv").find("toy-system,min,"), std::string::npos);
}

TEST_F(CliTest, SimulateIsSeededAndSeedFlagOverridesPreset) {
  const std::string preset = PHONODISC_DATA_DIR "/presets/fricative_merger.json";
  ASSERT_EQ(run({"--out-dir", out_dir("a"), "simulate", "--channel", preset, "--tokens", "400"}), 0) << err_.str();
  ASSERT_EQ(run({"--out-dir", out_dir("b"), "simulate", "--channel", preset, "--tokens", "400"}), 0);
  ASSERT_EQ(run({"--seed", "99", "--out-dir", out_dir("c"), "simulate", "--channel", preset, "--tokens", "400"}), 0);
  EXPECT_EQ(read("a/hyp.txt"), read("b/hyp.txt"));
  EXPECT_EQ(read("a/sim_log.jsonl"), read("b/sim_log.jsonl"));
  EXPECT_NE(read("a/hyp.txt"), read("c/hyp.txt"));
  EXPECT_EQ(parse_transcript(read("a/ref.txt"), "x").phone_count(), 400u);
  ASSERT_EQ(run({"--out-dir", out_dir("d"), "simulate", "--channel", preset, "--ref", (dir_ / "a/ref.txt").string()}),
            0);
  EXPECT_EQ(read("d/hyp.txt"), read("a/hyp.txt"));
  EXPECT_FALSE(fs::exists(dir_ / "d" / "ref.txt"));
}

TEST_F(CliTest, ConfusionsOnPresetWritesAllArtifacts) {
  const std::string preset = PHONODISC_DATA_DIR "/presets/fricative_merger.json";
  ASSERT_EQ(run({"--out-dir", out_dir("sim"), "simulate", "--channel", preset, "--tokens", "20000"}), 0);
  ASSERT_EQ(run({"--unit", "phone", "--out-dir", out_dir(), "confusions", "--ref", (dir_ / "sim/ref.txt").string(),
                 "--hyp", (dir_ / "sim/hyp.txt").string()}),
            0)
      << err_.str();
  for (const char* f : {"confusion_matrix.csv", "confusion_matrix_pruned.csv", "pruning_summary.json",
                        "distances.csv", "dendrogram.json", "dendrogram.nwk", "clusters.csv", "projection.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const std::string clusters = read("out/clusters.csv");
  std::map<std::string, std::string> label;
  std::istringstream in(clusters);
  for (const auto& row : csv::read_table(in).rows) label[row[0]] = row[1];
  for (const char* s : {"ʃ", "ʂ", "ɕ"}) EXPECT_EQ(label.at("s"), label.at(s)) << s;
  for (const char* s : {"θ", "ɸ", "x"}) EXPECT_EQ(label.at("f"), label.at(s)) << s;
  EXPECT_NE(label.at("s"), label.at("f"));
  EXPECT_EQ(label.size(), 8u);
}

TEST_F(CliTest, UnknownCodepointWarningGoesToStderr) {
  const auto t = write("t.txt", "u\t☺\n");
  EXPECT_EQ(run({"tokenize", t}), 0);
  EXPECT_NE(err_.str().find("U+263A"), std::string::npos);
  const auto table = write("classes.csv", "codepoint_hex,class\nU+263A,base\n");
  EXPECT_EQ(run({"--symbol-table", table, "tokenize", t}), 0);
  EXPECT_EQ(err_.str(), "");
}

}  // namespace
}  // namespace phonodisc
