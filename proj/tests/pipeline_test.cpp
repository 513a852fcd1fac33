// Copyright 2026 The extrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

#include "extrav/pipeline.hpp"
#include "extrav/synth.hpp"
#include "extrav/text.hpp"
#include "support.hpp"

namespace extrav::pipeline {
namespace {

namespace fs = std::filesystem;

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    auto spec = synth::CohortSpec::reference_defaults();
    spec.users_per_group = 25;
    spec.panel_users = 45;
    spec.tweets_per_user = 120;
    corpus_dir_ = new fs::path(extrav::testing::scratch_dir("pipeline_corpus"));
    generated_ = new synth::GeneratedCorpus(synth::generate_cohort(spec, corpus_dir_->string()));
  }
  static void TearDownTestSuite() {
    delete generated_;
    delete corpus_dir_;
  }

  static PipelineConfig config(const std::string& out) {
    PipelineConfig c;
    c.users_path = generated_->users_path;
    c.tweets_path = generated_->tweets_path;
    c.use_asset_dir((*corpus_dir_ / "assets").string());
    c.folds = 3;
    c.hp.forest_trees = 20;
    c.out_dir = extrav::testing::scratch_dir(out).string();
    return c;
  }

  static std::map<std::string, std::string> snapshot(const std::string& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = text::read_file(e.path().string());
    }
    return files;
  }

  static fs::path* corpus_dir_;
  static synth::GeneratedCorpus* generated_;
};

fs::path* PipelineTest::corpus_dir_ = nullptr;
synth::GeneratedCorpus* PipelineTest::generated_ = nullptr;

TEST(PipelineConfigJson, RoundTripAndUnknownKeys) {
  PipelineConfig c;
  c.users_path = "u.jsonl";
  c.model = ModelKind::random_forest;
  c.hp.svm_c = 4.0;
  c.snapshot_date = Date{2015, 12, 31};
  const auto back = PipelineConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.model, ModelKind::random_forest);
  EXPECT_THROW(PipelineConfig::from_json(R"({"userz":"x"})"), Error);
  EXPECT_THROW(PipelineConfig::from_json(R"({"snapshot_date":"2016/01/01"})"), Error);
}

TEST(PipelineConfigJson, ValidateNamesMissingFiles) {
  PipelineConfig c;
  EXPECT_THROW(c.validate(), Error);
  c.users_path = "/nonexistent/users.jsonl";
  EXPECT_THROW(c.validate(), Error);
}

TEST(Facets, NamesRoundTrip) {
  for (auto f : kAllFacets) EXPECT_EQ(facet_from_name(facet_name(f)), f);
  EXPECT_FALSE(facet_from_name("weather"));
}

TEST_F(PipelineTest, FullRunWritesEveryArtifact) {
  const auto c = config("pipe_full");
  ASSERT_TRUE(run_pipeline(c));
  for (const char* f : {"corpus_summary.json", "features.tsv", "labels.tsv", "model.json", "cohorts.tsv",
                        "cv_svm-rbf.json", "cv_random-forest.json", "cv_naive-bayes.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / f)) << f;
  }
  for (auto f : kAllFacets) {
    EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "analysis" / (std::string(facet_name(f)) + ".json")));
  }
  std::size_t tables = 0;
  for (auto t : kReportTables) tables += fs::exists(fs::path(c.out_dir) / "report" / (std::string(t) + ".tsv"));
  EXPECT_EQ(tables, 9u);
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "report" / "summary.tsv"));
  EXPECT_FALSE(fs::exists(fs::path(c.out_dir) / "INCOMPLETE"));

  // Every output embeds the seed and the input fingerprint.
  const auto fp = input_fingerprint(c);
  for (const auto& [name, content] : snapshot(c.out_dir)) {
    EXPECT_NE(content.find(fp), std::string::npos) << name;
    const bool json = name.ends_with(".json");
    EXPECT_NE(content.find(json ? "\"seed\": 42" : "seed=42"), std::string::npos) << name;
    if (json) {
      EXPECT_TRUE(nlohmann::json::parse(content).at("format").get<std::string>().starts_with("extrav-")) << name;
    }
  }
}

TEST_F(PipelineTest, RunsAreByteIdentical) {
  const auto a = config("pipe_det_a"), b = config("pipe_det_b");
  ASSERT_TRUE(run_pipeline(a));
  ASSERT_TRUE(run_pipeline(b));
  EXPECT_EQ(snapshot(a.out_dir), snapshot(b.out_dir));
}

TEST_F(PipelineTest, StagesRerunFromIntermediates) {
  const auto whole = config("pipe_whole"), staged = config("pipe_staged");
  ASSERT_TRUE(run_pipeline(whole));
  run_ingest(staged);
  run_features(staged);
  run_label(staged);
  run_cv(staged);
  run_train(staged);
  run_classify(staged);
  for (auto f : kAllFacets) run_analyze(staged, f);
  ASSERT_TRUE(run_report(staged));
  EXPECT_EQ(snapshot(whole.out_dir), snapshot(staged.out_dir));
  // Rerunning one stage over existing outputs changes nothing.
  run_features(staged);
  run_report(staged);
  EXPECT_EQ(snapshot(whole.out_dir), snapshot(staged.out_dir));
}

TEST_F(PipelineTest, MissingGazetteerSkipsSpatialOnly) {
  auto c = config("pipe_nogaz");
  c.gazetteer_path.clear();
  ASSERT_TRUE(run_pipeline(c));
  const auto j = nlohmann::json::parse(text::read_file(c.out_dir + "/analysis/spatial.json"));
  EXPECT_EQ(j["status"], "skipped");
  EXPECT_NE(j["notice"].get<std::string>().find("gazetteer"), std::string::npos);
  for (auto f : kAllFacets) {
    if (f == Facet::spatial) continue;
    const auto o = nlohmann::json::parse(text::read_file(c.out_dir + "/analysis/" + std::string(facet_name(f)) + ".json"));
    EXPECT_EQ(o["status"], "ok") << facet_name(f);
  }
  EXPECT_NE(text::read_file(c.out_dir + "/report/summary.tsv").find("spatial\tstatus\tboth\tskipped"),
            std::string::npos);
}

TEST_F(PipelineTest, MissingEmotionArtifactIsReported) {
  const auto c = config("pipe_gap");
  ASSERT_TRUE(run_pipeline(c));
  fs::remove(c.out_dir + "/analysis/emotion.json");
  EXPECT_FALSE(run_report(c));
  const auto summary = text::read_file(c.out_dir + "/report/summary.tsv");
  EXPECT_NE(summary.find("# missing artifact: analysis/emotion.json"), std::string::npos);
  EXPECT_NE(summary.find("emotion\tstatus\tboth\tmissing"), std::string::npos);
  EXPECT_FALSE(fs::exists(c.out_dir + "/report/emotion.tsv"));
  EXPECT_TRUE(fs::exists(c.out_dir + "/report/badges.tsv"));
}

TEST_F(PipelineTest, StageErrorsNameTheStageAndMarkOutputs) {
  auto c = config("pipe_err");
  const auto bad = extrav::testing::scratch_dir("pipe_err_input") / "tweets.jsonl";
  text::write_file(bad.string(), text::read_file(c.tweets_path) + "{not json\n");
  c.tweets_path = bad.string();
  try {
    run_pipeline(c);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "ingest");
  }
  const auto marker = text::read_file(c.out_dir + "/INCOMPLETE");
  EXPECT_TRUE(marker.starts_with("ingest\t"));

  auto d = config("pipe_err2");
  try {
    run_train(d);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "train");
  }
}

TEST_F(PipelineTest, FingerprintTracksContentNotPaths) {
  const auto c = config("pipe_fp");
  auto moved = c;
  const auto copy = extrav::testing::scratch_dir("pipe_fp_copy") / "users.jsonl";
  fs::copy_file(c.users_path, copy);
  moved.users_path = copy.string();
  EXPECT_EQ(input_fingerprint(c), input_fingerprint(moved));
  text::write_file(copy.string(), text::read_file(c.users_path) + "\n");
  EXPECT_NE(input_fingerprint(c), input_fingerprint(moved));
}

}  // namespace
}  // namespace extrav::pipeline
