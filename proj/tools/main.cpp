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


#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "extrav/assets.hpp"
#include "extrav/pipeline.hpp"
#include "extrav/synth.hpp"
#include "extrav/text.hpp"

namespace fs = std::filesystem;
using namespace extrav;
using pipeline::PipelineConfig;

namespace {

constexpr int kExitError = 1;
constexpr int kExitIncomplete = 2;

struct Options {
  std::string config;
  std::string users, tweets, asset_dir;
  std::string lexicon, buying_keywords, emotion_lexicon, source_map, gazetteer, poi;
  std::string snapshot;
  std::optional<std::int64_t> min_tweets;
  std::optional<std::size_t> top_terms;
  std::optional<int> folds;
  std::string model;
  std::optional<double> svm_c, svm_gamma;
  std::optional<int> trees;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_shared(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--users", o.users, "users.jsonl");
  cmd->add_option("--tweets", o.tweets, "tweets.jsonl");
  cmd->add_option("--assets", o.asset_dir, "asset directory written by `extrav assets`");
  cmd->add_option("--lexicon", o.lexicon, "candidate term list");
  cmd->add_option("--buying-keywords", o.buying_keywords, "buying keyword list");
  cmd->add_option("--emotion-lexicon", o.emotion_lexicon, "emotion lexicon JSON");
  cmd->add_option("--source-map", o.source_map, "source tag to channel JSON");
  cmd->add_option("--gazetteer", o.gazetteer, "city gazetteer CSV");
  cmd->add_option("--poi", o.poi, "POI CSV");
  cmd->add_option("--snapshot", o.snapshot, "snapshot date YYYY-MM-DD");
  cmd->add_option("--min-tweets", o.min_tweets, "activity threshold");
  cmd->add_option("--top-terms", o.top_terms, "number of selected terms");
  cmd->add_option("--folds", o.folds, "cross-validation folds");
  cmd->add_option("--model", o.model, "svm-rbf, random-forest or naive-bayes");
  cmd->add_option("--svm-c", o.svm_c, "SVM cost");
  cmd->add_option("--svm-gamma", o.svm_gamma, "RBF gamma (0: 1/features)");
  cmd->add_option("--trees", o.trees, "random forest size");
  cmd->add_option("--seed", o.seed, "run seed");
  cmd->add_option("--out", o.out, "output directory");
}

// Corpus and asset paths in a config file are relative to the file itself.
void resolve_relative(std::string& p, const fs::path& base) {
  if (!p.empty() && fs::path(p).is_relative()) p = (base / p).lexically_normal().string();
}

PipelineConfig build_config(const Options& o) {
  PipelineConfig c;
  if (!o.config.empty()) {
    c = PipelineConfig::from_json(text::read_file(o.config));
    const auto base = fs::path(o.config).parent_path();
    for (auto* p : {&c.users_path, &c.tweets_path, &c.lexicon_path, &c.buying_keywords_path,
                    &c.emotion_lexicon_path, &c.source_map_path, &c.gazetteer_path, &c.poi_path}) {
      resolve_relative(*p, base);
    }
  }
  if (!o.asset_dir.empty()) c.use_asset_dir(o.asset_dir);
  const auto set = [](std::string& dst, const std::string& v) {
    if (!v.empty()) dst = v;
  };
  set(c.users_path, o.users);
  set(c.tweets_path, o.tweets);
  set(c.lexicon_path, o.lexicon);
  set(c.buying_keywords_path, o.buying_keywords);
  set(c.emotion_lexicon_path, o.emotion_lexicon);
  set(c.source_map_path, o.source_map);
  set(c.gazetteer_path, o.gazetteer);
  set(c.poi_path, o.poi);
  set(c.out_dir, o.out);
  if (!o.snapshot.empty()) {
    const auto d = Date::parse(o.snapshot);
    if (!d) throw Error("--snapshot must be YYYY-MM-DD");
    c.snapshot_date = *d;
  }
  if (!o.model.empty()) c.model = model_kind_from_name(o.model);
  if (o.min_tweets) c.min_tweets = *o.min_tweets;
  if (o.top_terms) c.top_terms = *o.top_terms;
  if (o.folds) c.folds = *o.folds;
  if (o.svm_c) c.hp.svm_c = *o.svm_c;
  if (o.svm_gamma) c.hp.svm_gamma = *o.svm_gamma;
  if (o.trees) c.hp.forest_trees = *o.trees;
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

int gen_synthetic(const std::string& out, std::uint64_t seed, std::optional<std::size_t> per_group,
                  std::optional<std::size_t> per_user, std::optional<std::size_t> panel, bool null_effects) {
  auto spec = null_effects ? synth::CohortSpec::null_effects() : synth::CohortSpec::reference_defaults();
  spec.seed = seed;
  if (per_group) spec.users_per_group = *per_group;
  if (per_user) spec.tweets_per_user = *per_user;
  if (panel) spec.panel_users = *panel;
  const auto g = synth::generate_cohort(spec, out);
  nlohmann::ordered_json cfg;
  cfg["users"] = "users.jsonl";
  cfg["tweets"] = "tweets.jsonl";
  cfg["lexicon"] = "assets/lexicon.txt";
  cfg["buying_keywords"] = "assets/buying_keywords.txt";
  cfg["emotion_lexicon"] = "assets/emotion_lexicon.json";
  cfg["source_map"] = "assets/source_map.json";
  cfg["gazetteer"] = "assets/gazetteer.csv";
  cfg["poi"] = "assets/poi.csv";
  cfg["snapshot_date"] = spec.snapshot.to_string();
  cfg["badge"] = spec.badge;
  text::write_file((fs::path(out) / "config.json").string(), cfg.dump(2) + "\n");
  std::cout << "wrote " << g.user_count << " users and " << g.tweet_count << " tweets to " << out
            << " (config.json, truth.tsv, assets/)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extrav: extraversion inference and behavioral analytics for microblog corpora"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "load and validate the corpus, write corpus_summary.json");
  auto* features = app.add_subcommand("features", "select terms and write the feature tables");
  auto* label = app.add_subcommand("label", "derive three-way labels from self-report scores");
  auto* cv = app.add_subcommand("cv", "stratified cross-validation");
  std::string cv_kind;
  cv->add_option("--kind", cv_kind, "evaluate only this model kind");
  auto* train = app.add_subcommand("train", "train the configured model on all scored users");
  auto* classify = app.add_subcommand("classify", "label every unscored active user");
  auto* analyze = app.add_subcommand("analyze", "run one analysis facet, or all of them");
  std::string facet = "all";
  analyze->add_option("facet", facet, "temporal, spatial, sharing, interaction, purchasing, emotion, badge or all");
  auto* report = app.add_subcommand("report", "write the report tables from analysis artifacts");
  auto* run = app.add_subcommand("run", "every stage in order");
  for (auto* c : {ingest, features, label, cv, train, classify, analyze, report, run}) add_shared(c, o);

  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic cohort with planted effects");
  std::string gen_out;
  std::uint64_t gen_seed = 20170317;
  std::optional<std::size_t> per_group, per_user, panel;
  bool null_effects = false;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--users-per-group", per_group, "unscored users per group");
  gen->add_option("--tweets-per-user", per_user, "tweets per user");
  gen->add_option("--panel-users", panel, "users with a self-report score");
  gen->add_flag("--null-effects", null_effects, "identical behavior in both groups");

  auto* assets_cmd = app.add_subcommand("assets", "write the default asset files");
  std::string assets_out;
  assets_cmd->add_option("--out", assets_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return gen_synthetic(gen_out, gen_seed, per_group, per_user, panel, null_effects);
    if (assets_cmd->parsed()) {
      assets::write_default_assets(assets_out);
      std::cout << "wrote default assets to " << assets_out << "\n";
      return 0;
    }
    const auto cfg = build_config(o);
    const auto done = [](std::string_view stage) { std::cout << "[" << stage << "] ok\n"; };
    if (ingest->parsed()) {
      pipeline::run_ingest(cfg);
      done("ingest");
    } else if (features->parsed()) {
      pipeline::run_features(cfg);
      done("features");
    } else if (label->parsed()) {
      pipeline::run_label(cfg);
      done("label");
    } else if (cv->parsed()) {
      std::optional<ModelKind> kind;
      if (!cv_kind.empty()) kind = model_kind_from_name(cv_kind);
      pipeline::run_cv(cfg, kind);
      done("cv");
    } else if (train->parsed()) {
      pipeline::run_train(cfg);
      done("train");
    } else if (classify->parsed()) {
      pipeline::run_classify(cfg);
      done("classify");
    } else if (analyze->parsed()) {
      if (facet == "all") {
        for (auto f : pipeline::kAllFacets) pipeline::run_analyze(cfg, f);
      } else {
        const auto f = pipeline::facet_from_name(facet);
        if (!f) throw Error("unknown facet '" + facet + "'");
        pipeline::run_analyze(cfg, *f);
      }
      done("analyze");
    } else if (report->parsed()) {
      if (!pipeline::run_report(cfg)) {
        std::cerr << "report: some analysis artifacts are missing; see report/summary.tsv\n";
        return kExitIncomplete;
      }
      done("report");
    } else if (run->parsed()) {
      if (!pipeline::run_pipeline(cfg)) {
        std::cerr << "run: report incomplete; see report/summary.tsv\n";
        return kExitIncomplete;
      }
      std::cout << "[run] ok, outputs in " << cfg.out_dir << "\n";
    }
  } catch (const pipeline::StageError& e) {
    std::cerr << "stage " << e.stage() << " failed: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
