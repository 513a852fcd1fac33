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


#include "extrav/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>

#include "extrav/analytics.hpp"
#include "extrav/assets.hpp"
#include "extrav/features.hpp"
#include "extrav/geo.hpp"
#include "extrav/labeling.hpp"
#include "extrav/stats.hpp"
#include "extrav/text.hpp"

namespace extrav::pipeline {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kMarker = "INCOMPLETE";

// ---------------------------------------------------------------------------
// Intermediate files

struct LabelRow {
  std::string user_id;
  double score = 0.0;
  Label label = Label::neutral;
};

std::vector<std::vector<std::string>> read_tsv(const std::string& path, std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  bool seen = false;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(text::read_file(path), '\n')) {
    ++line_no;
    if (raw.empty() || raw.front() == '#') continue;
    if (!seen) {
      if (raw != header) throw ParseError(path, line_no, "<header>", "expected '" + std::string(header) + "'");
      seen = true;
      continue;
    }
    auto cols = text::split(raw, '\t');
    if (cols.size() != text::split(header, '\t').size()) {
      throw ParseError(path, line_no, "<row>", "wrong column count");
    }
    rows.push_back(std::move(cols));
  }
  if (!seen) throw ParseError(path, 1, "<header>", "missing header");
  return rows;
}

double to_double(const std::string& s, const std::string& path) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw Error(path + ": bad number '" + s + "'");
  return v;
}

std::vector<LabelRow> read_labels(const std::string& path) {
  std::vector<LabelRow> out;
  for (const auto& c : read_tsv(path, "user_id\tscore\tlabel")) {
    out.push_back({c[0], to_double(c[1], path), label_from_int(static_cast<int>(to_double(c[2], path)))});
  }
  return out;
}

std::vector<std::pair<std::string, Label>> read_cohorts(const std::string& path) {
  std::vector<std::pair<std::string, Label>> out;
  for (const auto& c : read_tsv(path, "user_id\tlabel")) {
    out.emplace_back(c[0], label_from_int(static_cast<int>(to_double(c[1], path))));
  }
  return out;
}

ojson read_json(const std::string& path) {
  try {
    return ojson::parse(text::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string dump(const ojson& j) { return j.dump(1) + "\n"; }

// ---------------------------------------------------------------------------
// Run context: caches the corpus and fingerprint across stages.

class Context {
 public:
  explicit Context(const PipelineConfig& c) : cfg(c) {}

  const PipelineConfig& cfg;

  std::string path(std::string_view rel) const {
    return (fs::path(cfg.out_dir) / fs::path(std::string(rel))).string();
  }

  const std::string& fingerprint() {
    if (!fingerprint_) fingerprint_ = input_fingerprint(cfg);
    return *fingerprint_;
  }

  std::string preamble() { return fmt::format("# seed={} input={}\n", cfg.seed, fingerprint()); }

  ojson header(std::string_view format) {
    ojson j;
    j["format"] = format;
    j["seed"] = cfg.seed;
    j["input_fingerprint"] = fingerprint();
    return j;
  }

  /// Prepends provenance to a JSON document produced elsewhere.
  ojson with_provenance(const ojson& doc) {
    ojson j = header(doc.value("format", std::string()));
    for (const auto& [k, v] : doc.items()) {
      if (k != "format" && k != "seed" && k != "input_fingerprint") j[k] = v;
    }
    j["seed"] = cfg.seed;
    return j;
  }

  const Corpus& active() {
    load();
    return *active_;
  }

  std::size_t users_total() {
    load();
    return users_total_;
  }
  std::size_t tweets_total() {
    load();
    return tweets_total_;
  }
  std::size_t orphans() {
    load();
    return orphans_;
  }

 private:
  void load() {
    if (active_) return;
    auto users = load_users(cfg.users_path, cfg.snapshot_date);
    std::set<std::string> ids;
    for (const auto& u : users) ids.insert(u.user_id);
    auto tweets = load_tweets(cfg.tweets_path, ids);
    users_total_ = users.size();
    tweets_total_ = tweets.total;
    orphans_ = tweets.orphans;
    const Corpus full(cfg.snapshot_date, std::move(users), std::move(tweets.groups));
    active_.emplace(filter_active(full, cfg.min_tweets));
  }

  std::optional<std::string> fingerprint_;
  std::optional<Corpus> active_;
  std::size_t users_total_ = 0;
  std::size_t tweets_total_ = 0;
  std::size_t orphans_ = 0;
};

void write(Context& ctx, std::string_view rel, std::string_view content) {
  text::write_file(ctx.path(rel), content);
}

template <typename F>
auto guarded(Context& ctx, const std::string& stage, F&& body) {
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      if (fs::exists(ctx.path(kMarker))) {
        const auto marker = text::read_file(ctx.path(kMarker));
        if (marker.starts_with(stage + "\t")) fs::remove(ctx.path(kMarker));
      }
    } else {
      return body();
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    try {
      text::write_file(ctx.path(kMarker), stage + "\t" + e.what() + "\n");
    } catch (const std::exception&) {
      // The original error is more useful than a marker failure.
    }
    throw StageError(stage, e.what());
  }
}

// ---------------------------------------------------------------------------
// Stages

void ingest(Context& ctx) {
  const auto& corpus = ctx.active();
  std::size_t scored = 0;
  for (const auto& u : corpus.users()) scored += u.extraversion_score.has_value();
  auto j = ctx.header("extrav-corpus-summary/1");
  j["snapshot_date"] = ctx.cfg.snapshot_date.to_string();
  j["min_tweets"] = ctx.cfg.min_tweets;
  j["users"] = ctx.users_total();
  j["tweets"] = ctx.tweets_total();
  j["orphan_tweets"] = ctx.orphans();
  j["active_users"] = corpus.users().size();
  j["active_tweets"] = corpus.tweet_count();
  j["scored_active_users"] = scored;
  write(ctx, "corpus_summary.json", dump(j));
  auto cfg = ojson::parse(ctx.cfg.to_json());
  cfg["format"] = "extrav-run-config/1";
  write(ctx, "run_config.json", dump(ctx.with_provenance(cfg)));
}

void features(Context& ctx) {
  const auto& corpus = ctx.active();
  std::vector<std::string> documents;
  for (const auto& u : corpus.users()) {
    if (u.extraversion_score) documents.push_back(build_user_document(corpus.tweets_of(u.user_id)));
  }
  if (documents.empty()) throw DomainError("no active user carries a self-report score");
  const auto lexicon = TermLexicon::load(ctx.cfg.lexicon_path);
  const auto k = std::min(ctx.cfg.top_terms, lexicon.size());
  const auto selected = select_terms(documents, lexicon, k);
  const auto registry = FeatureRegistry::default_registry(selected);

  FeatureTable raw{registry.names(), {}, {}};
  Matrix training;
  for (const auto& u : corpus.users()) {
    auto v = assemble(u, corpus.tweets_of(u.user_id), registry, selected, corpus.snapshot_date());
    if (u.extraversion_score) training.push_back(v.values);
    raw.user_ids.push_back(u.user_id);
    raw.rows.push_back(std::move(v.values));
  }
  const auto scaler = Standardizer::fit(training);
  FeatureTable scaled{raw.names, raw.user_ids, scaler.transform(raw.rows)};

  const auto pre = ctx.preamble();
  write(ctx, "selected_terms.txt", pre + assets::format_line_list(selected));
  write(ctx, "registry.tsv", pre + registry.serialize());
  auto sj = ctx.header("extrav-scaler/1");
  sj["registry_fingerprint"] = text::to_hex(registry.fingerprint());
  sj["min"] = scaler.mins();
  sj["max"] = scaler.maxs();
  write(ctx, "scaler.json", dump(sj));
  write(ctx, "features_raw.tsv", format_feature_table(raw, pre));
  write(ctx, "features.tsv", format_feature_table(scaled, pre));
}

void label(Context& ctx) {
  const auto& corpus = ctx.active();
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& u : corpus.users()) {
    if (u.extraversion_score) scored.emplace_back(u.user_id, *u.extraversion_score);
  }
  std::vector<double> scores;
  for (const auto& s : scored) scores.push_back(s.second);
  const auto model = fit_score_model(scores);
  std::array<int, 3> counts{};
  std::string out = ctx.preamble() + "user_id\tscore\tlabel\n";
  for (const auto& [id, s] : scored) {
    const auto l = label_score(s, model);
    ++counts[static_cast<std::size_t>(label_index(l))];
    out += fmt::format("{}\t{}\t{}\n", id, s, to_int(l));
  }
  write(ctx, "labels.tsv", out);
  auto j = ctx.header("extrav-score-model/1");
  j["mu"] = model.mu();
  j["sigma"] = model.sigma();
  j["lower"] = model.lower();
  j["upper"] = model.upper();
  j["counts"] = {{"introvert", counts[0]}, {"neutral", counts[1]}, {"extrovert", counts[2]}};
  write(ctx, "score_model.json", dump(j));
}

std::vector<LabeledSample> training_samples(Context& ctx) {
  const auto table = parse_feature_table(text::read_file(ctx.path("features.tsv")));
  std::map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < table.user_ids.size(); ++i) row_of.emplace(table.user_ids[i], i);
  std::vector<LabeledSample> out;
  for (const auto& l : read_labels(ctx.path("labels.tsv"))) {
    const auto it = row_of.find(l.user_id);
    if (it == row_of.end()) throw Error("labels.tsv: user '" + l.user_id + "' has no feature row");
    out.push_back({l.user_id, table.rows[it->second], l.label});
  }
  return out;
}

void cv(Context& ctx, std::optional<ModelKind> only) {
  const auto samples = training_samples(ctx);
  for (auto kind : kAllModelKinds) {
    if (only && *only != kind) continue;
    const auto report = cross_validate(kind, samples, ctx.cfg.folds, ctx.cfg.seed, ctx.cfg.hp);
    write(ctx, fmt::format("cv_{}.json", model_kind_name(kind)),
          dump(ctx.with_provenance(ojson::parse(report.to_json()))));
  }
}

std::uint64_t registry_fingerprint(Context& ctx) {
  return FeatureRegistry::parse(text::read_file(ctx.path("registry.tsv"))).fingerprint();
}

void train_stage(Context& ctx) {
  const auto samples = training_samples(ctx);
  const auto sj = read_json(ctx.path("scaler.json"));
  Standardizer scaler(sj.at("min").get<std::vector<double>>(), sj.at("max").get<std::vector<double>>());
  const auto model = train(ctx.cfg.model, samples, ctx.cfg.hp, ctx.cfg.seed,
                           ModelBinding{registry_fingerprint(ctx), scaler});
  write(ctx, "model.json", dump(ctx.with_provenance(ojson::parse(model.to_json()))));
}

void classify_stage(Context& ctx) {
  const auto model = TrainedModel::from_json(text::read_file(ctx.path("model.json")));
  const auto fp = registry_fingerprint(ctx);
  const auto table = parse_feature_table(text::read_file(ctx.path("features_raw.tsv")));
  std::set<std::string> training;
  for (const auto& l : read_labels(ctx.path("labels.tsv"))) training.insert(l.user_id);
  std::string out = ctx.preamble() + "user_id\tlabel\n";
  for (std::size_t i = 0; i < table.user_ids.size(); ++i) {
    if (training.contains(table.user_ids[i])) continue;
    const auto l = classify(model, FeatureVector{table.user_ids[i], table.rows[i], fp});
    out += fmt::format("{}\t{}\n", table.user_ids[i], to_int(l));
  }
  write(ctx, "cohorts.tsv", out);
}

// ---------------------------------------------------------------------------
// Analysis facets

struct Cohorts {
  std::vector<const UserRecord*> extrovert;
  std::vector<const UserRecord*> introvert;
};

Cohorts load_cohorts(Context& ctx) {
  const auto& corpus = ctx.active();
  Cohorts c;
  for (const auto& [id, l] : read_cohorts(ctx.path("cohorts.tsv"))) {
    const auto* u = corpus.find_user(id);
    if (!u) throw Error("cohorts.tsv: user '" + id + "' is not an active corpus user");
    if (l == Label::extrovert) c.extrovert.push_back(u);
    if (l == Label::introvert) c.introvert.push_back(u);
  }
  if (c.extrovert.empty() || c.introvert.empty()) {
    throw DomainError("classification produced an empty extrovert or introvert cohort");
  }
  return c;
}

std::vector<TweetRecord> pooled(const Corpus& corpus, const std::vector<const UserRecord*>& users) {
  std::vector<TweetRecord> out;
  for (const auto* u : users) {
    const auto& t = corpus.tweets_of(u->user_id);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

ojson summary_json(const stats::Summary& s) {
  ojson j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  j["std"] = s.std_dev;
  j["min"] = s.min;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["max"] = s.max;
  return j;
}

ojson test_json(const std::function<stats::TestResult()>& fn) {
  ojson j;
  try {
    const auto r = fn();
    j["statistic"] = r.statistic;
    j["df1"] = r.df1;
    j["df2"] = r.df2;
    j["p_value"] = r.p_value;
  } catch (const DomainError& e) {
    j["error"] = e.what();
  }
  return j;
}

ojson interval_json(const analytics::IntervalStats& s) {
  ojson j;
  j["mean_hours"] = s.mean_hours;
  j["std_hours"] = s.std_hours;
  j["n"] = s.n;
  return j;
}

using CohortFn = std::function<ojson(analytics::Cohort, const std::vector<const UserRecord*>&)>;

ojson per_cohort(const Cohorts& c, const CohortFn& fn) {
  ojson j;
  j["extrovert"] = fn(analytics::Cohort::extrovert, c.extrovert);
  j["introvert"] = fn(analytics::Cohort::introvert, c.introvert);
  return j;
}

void temporal(Context& ctx, const Cohorts& c, ojson& out) {
  const auto& corpus = ctx.active();
  out["hourly"] = per_cohort(c, [&](analytics::Cohort, const auto& users) {
    const auto tweets = pooled(corpus, users);
    return ojson(analytics::hourly_distribution(tweets));
  });

  std::array<std::array<std::vector<double>, 3>, 2> shares;
  std::array<std::vector<std::vector<double>>, 2> raw_gaps, capped_gaps;
  ojson per_user;
  for (int g = 0; g < 2; ++g) {
    const auto& users = g == 0 ? c.extrovert : c.introvert;
    ojson rows = ojson::array();
    for (const auto* u : users) {
      const auto& tweets = corpus.tweets_of(u->user_id);
      const auto p = analytics::period_shares(tweets);
      for (std::size_t k = 0; k < 3; ++k) shares[g][k].push_back(p[k]);
      raw_gaps[g].push_back(analytics::posting_intervals(tweets));
      capped_gaps[g].push_back(analytics::posting_intervals(tweets, ctx.cfg.interval_cap_hours));
      ojson row;
      row["user_id"] = u->user_id;
      row["period_shares"] = p;
      const auto& rg = raw_gaps[g].back();
      const auto& cg = capped_gaps[g].back();
      row["interval_mean_hours"] = rg.empty() ? ojson(nullptr) : ojson(stats::mean(rg));
      row["capped_interval_mean_hours"] = cg.empty() ? ojson(nullptr) : ojson(stats::mean(cg));
      rows.push_back(row);
    }
    per_user[g == 0 ? "extrovert" : "introvert"] = rows;
  }

  ojson periods;
  for (std::size_t k = 0; k < 3; ++k) {
    ojson p;
    p["period"] = analytics::kPeriodNames[k];
    p["extrovert_mean"] = stats::mean(shares[0][k]);
    p["introvert_mean"] = stats::mean(shares[1][k]);
    p["welch"] = test_json([&] { return stats::welch_t(shares[0][k], shares[1][k]); });
    periods.push_back(p);
  }
  out["periods"] = periods;

  ojson intervals;
  intervals["cap_hours"] = ctx.cfg.interval_cap_hours;
  for (int g = 0; g < 2; ++g) {
    ojson s;
    s["uncapped"] = interval_json(analytics::pooled_interval_stats(raw_gaps[g]));
    s["capped"] = interval_json(analytics::pooled_interval_stats(capped_gaps[g]));
    intervals[g == 0 ? "extrovert" : "introvert"] = s;
  }
  out["intervals"] = intervals;
  out["per_user"] = per_user;
}

void spatial(Context& ctx, const Cohorts& c, ojson& out) {
  if (ctx.cfg.gazetteer_path.empty()) {
    out["status"] = "skipped";
    out["notice"] = "no gazetteer configured; spatial facet skipped";
    return;
  }
  const auto& corpus = ctx.active();
  const auto gazetteer = geo::Gazetteer::load(ctx.cfg.gazetteer_path);
  ojson cities;
  ojson per_user;
  for (int g = 0; g < 2; ++g) {
    const auto& users = g == 0 ? c.extrovert : c.introvert;
    std::vector<std::vector<std::string>> lists;
    ojson rows = ojson::array();
    for (const auto* u : users) {
      lists.push_back(analytics::user_cities(corpus.tweets_of(u->user_id), gazetteer));
      rows.push_back({{"user_id", u->user_id}, {"distinct_cities", lists.back().size()}});
    }
    std::size_t located = 0;
    for (const auto& l : lists) located += !l.empty();
    ojson s;
    s["users_with_cities"] = located;
    s["buckets"] = analytics::kCityBuckets;
    s["shares"] = analytics::city_count_histogram(lists);
    cities[g == 0 ? "extrovert" : "introvert"] = s;
    per_user[g == 0 ? "extrovert" : "introvert"] = rows;
  }
  out["cities"] = cities;

  if (ctx.cfg.poi_path.empty()) {
    out["poi"] = {{"status", "skipped"}, {"notice", "no POI file configured"}};
  } else {
    const auto index = geo::PoiIndex::load(ctx.cfg.poi_path);
    ojson poi;
    poi["status"] = "ok";
    poi["max_km"] = ctx.cfg.poi_max_km;
    ojson names = ojson::array();
    for (auto cat : geo::kAllPoiCategories) names.push_back(geo::category_name(cat));
    poi["categories"] = names;
    for (int g = 0; g < 2; ++g) {
      const auto tweets = pooled(corpus, g == 0 ? c.extrovert : c.introvert);
      const auto s = analytics::poi_shares(tweets, index, ctx.cfg.poi_max_km);
      poi[g == 0 ? "extrovert" : "introvert"] = {
          {"counts", s.counts}, {"uncategorized", s.uncategorized}, {"shares", s.shares}};
    }
    out["poi"] = poi;
  }
  out["per_user"] = per_user;
}

void sharing(Context& ctx, const Cohorts& c, ojson& out) {
  const auto& corpus = ctx.active();
  const auto map = analytics::load_source_map(ctx.cfg.source_map_path);
  ojson channels = ojson::array();
  for (auto ch : analytics::kSharingChannels) channels.push_back(analytics::channel_name(ch));
  out["channels"] = channels;
  out["percent"] = per_cohort(c, [&](analytics::Cohort, const auto& users) {
    return ojson(analytics::sharing_shares(pooled(corpus, users), map));
  });
  out["per_user"] = per_cohort(c, [&](analytics::Cohort, const auto& users) {
    ojson rows = ojson::array();
    for (const auto* u : users) {
      rows.push_back({{"user_id", u->user_id},
                      {"percent", analytics::sharing_shares(corpus.tweets_of(u->user_id), map)}});
    }
    return rows;
  });
}

void interaction(Context& ctx, ojson& out) {
  // Scores come from the self-report training set, never from classifier output.
  const auto registry = FeatureRegistry::parse(text::read_file(ctx.path("registry.tsv")));
  const auto table = parse_feature_table(text::read_file(ctx.path("features_raw.tsv")));
  std::map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < table.user_ids.size(); ++i) row_of.emplace(table.user_ids[i], i);
  const auto labels = read_labels(ctx.path("labels.tsv"));
  std::vector<double> scores;
  std::vector<std::size_t> rows;
  for (const auto& l : labels) {
    const auto it = row_of.find(l.user_id);
    if (it == row_of.end()) throw Error("labels.tsv: user '" + l.user_id + "' has no feature row");
    scores.push_back(l.score);
    rows.push_back(it->second);
  }
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  for (std::size_t f = 0; f < registry.size(); ++f) {
    if (registry.entries()[f].family != FeatureFamily::interactive) continue;
    names.push_back(registry.entries()[f].name);
    std::vector<double> col;
    for (auto r : rows) col.push_back(table.rows[r][f]);
    columns.push_back(std::move(col));
  }
  const auto ranked = analytics::interaction_correlations(names, columns, scores);
  out["n"] = scores.size();
  out["threshold"] = ctx.cfg.correlation_threshold;
  ojson all = ojson::array();
  ojson above = ojson::array();
  for (const auto& r : ranked) {
    all.push_back({{"feature", r.feature}, {"coefficient", r.coefficient}});
    if (r.coefficient > ctx.cfg.correlation_threshold) above.push_back(r.feature);
  }
  out["ranked"] = all;
  out["above_threshold"] = above;
}

void purchasing(Context& ctx, const Cohorts& c, ojson& out) {
  const auto& corpus = ctx.active();
  const auto keywords = text::read_line_list(ctx.cfg.buying_keywords_path);
  std::array<std::vector<double>, 2> values;
  ojson per_user;
  for (int g = 0; g < 2; ++g) {
    const auto& users = g == 0 ? c.extrovert : c.introvert;
    ojson rows = ojson::array();
    for (const auto* u : users) {
      values[g].push_back(analytics::purchasing_index(corpus.tweets_of(u->user_id), keywords));
      rows.push_back({{"user_id", u->user_id}, {"index", values[g].back()}});
    }
    const auto d = analytics::make_distribution(
        g == 0 ? analytics::Cohort::extrovert : analytics::Cohort::introvert, values[g]);
    out["summary"][g == 0 ? "extrovert" : "introvert"] = summary_json(d.summary);
    per_user[g == 0 ? "extrovert" : "introvert"] = rows;
  }
  out["anova"] = test_json([&] { return stats::anova_oneway(values[0], values[1]); });
  out["welch"] = test_json([&] { return stats::welch_t(values[0], values[1]); });
  out["per_user"] = per_user;
}

void emotion(Context& ctx, const Cohorts& c, ojson& out) {
  const auto& corpus = ctx.active();
  const analytics::LexiconEmotionClassifier classifier(
      analytics::load_emotion_lexicon(ctx.cfg.emotion_lexicon_path));
  ojson names = ojson::array();
  for (auto e : analytics::kAllEmotions) names.push_back(analytics::emotion_name(e));
  out["emotions"] = names;
  std::array<std::array<std::vector<double>, 5>, 2> values;
  ojson per_user;
  for (int g = 0; g < 2; ++g) {
    const auto& users = g == 0 ? c.extrovert : c.introvert;
    ojson rows = ojson::array();
    std::size_t absent = 0;
    for (const auto* u : users) {
      const auto idx = analytics::emotion_indices(corpus.tweets_of(u->user_id), classifier);
      if (!idx) {
        ++absent;
        rows.push_back({{"user_id", u->user_id}, {"indexes", nullptr}});
        continue;
      }
      for (std::size_t k = 0; k < 5; ++k) values[g][k].push_back((*idx)[k]);
      rows.push_back({{"user_id", u->user_id}, {"indexes", *idx}});
    }
    const char* key = g == 0 ? "extrovert" : "introvert";
    out["users_without_emotion"][key] = absent;
    ojson means = ojson::array();
    for (std::size_t k = 0; k < 5; ++k) {
      means.push_back(values[g][k].empty() ? ojson(nullptr) : ojson(stats::mean(values[g][k])));
    }
    out["means"][key] = means;
    per_user[key] = rows;
  }
  ojson tests = ojson::array();
  for (std::size_t k = 0; k < 5; ++k) {
    tests.push_back(test_json([&] { return stats::welch_t(values[0][k], values[1][k]); }));
  }
  out["welch"] = tests;
  out["per_user"] = per_user;
}

void badge(Context& ctx, const Cohorts& c, ojson& out) {
  out["badge"] = ctx.cfg.badge;
  out["shares"] = per_cohort(c, [&](analytics::Cohort, const auto& users) {
    const auto s = analytics::badge_shares(users, ctx.cfg.badge);
    return ojson{{"with", s.with}, {"without", s.without}, {"n", users.size()}};
  });
  out["per_user"] = per_cohort(c, [&](analytics::Cohort, const auto& users) {
    ojson rows = ojson::array();
    for (const auto* u : users) rows.push_back({{"user_id", u->user_id}, {"has_badge", u->badges.contains(ctx.cfg.badge)}});
    return rows;
  });
}

void analyze(Context& ctx, Facet facet) {
  auto out = ctx.header("extrav-analysis/1");
  out["facet"] = facet_name(facet);
  out["status"] = "ok";
  if (facet == Facet::interaction) {
    out["population"] = "self-report training set";
    interaction(ctx, out);
  } else {
    const auto cohorts = load_cohorts(ctx);
    out["population"] = "classified cohorts";
    out["cohort_sizes"] = {{"extrovert", cohorts.extrovert.size()}, {"introvert", cohorts.introvert.size()}};
    switch (facet) {
      case Facet::temporal:
        temporal(ctx, cohorts, out);
        break;
      case Facet::spatial:
        spatial(ctx, cohorts, out);
        break;
      case Facet::sharing:
        sharing(ctx, cohorts, out);
        break;
      case Facet::purchasing:
        purchasing(ctx, cohorts, out);
        break;
      case Facet::emotion:
        emotion(ctx, cohorts, out);
        break;
      case Facet::badge:
        badge(ctx, cohorts, out);
        break;
      case Facet::interaction:
        break;
    }
  }
  write(ctx, fmt::format("analysis/{}.json", facet_name(facet)), dump(out));
}

// ---------------------------------------------------------------------------
// Report

std::string f4(double v) { return fmt::format("{:.4f}", v); }
std::string p4(double v) { return fmt::format("{:.4e}", v); }
std::string num(const ojson& v) { return v.is_null() ? "NA" : f4(v.get<double>()); }

std::string test_cells(const ojson& t) {
  if (t.contains("error")) return "NA\tNA\tNA";
  return f4(t["statistic"].get<double>()) + "\t" + f4(t["df1"].get<double>()) + "\t" +
         p4(t["p_value"].get<double>());
}

std::string test_comment(const std::string& name, const ojson& t) {
  if (t.contains("error")) return "# " + name + ": not computed (" + t["error"].get<std::string>() + ")\n";
  const double df2 = t["df2"].get<double>();
  const auto df = df2 > 0.0 ? fmt::format("df1={} df2={}", f4(t["df1"].get<double>()), f4(df2))
                            : fmt::format("df={}", f4(t["df1"].get<double>()));
  return fmt::format("# {}: statistic={} {} p={}\n", name, f4(t["statistic"].get<double>()), df,
                     p4(t["p_value"].get<double>()));
}

struct SummaryRows {
  std::string body;
  void add(std::string_view facet, std::string_view metric, std::string_view cohort, const std::string& v) {
    std::string key = text::ascii_lower(metric);
    std::replace(key.begin(), key.end(), ' ', '_');
    body += fmt::format("{}\t{}\t{}\t{}\n", facet, key, cohort, v);
  }
  void pair(std::string_view facet, std::string_view metric, const ojson& e, const ojson& i) {
    add(facet, metric, "extrovert", num(e));
    add(facet, metric, "introvert", num(i));
  }
};

bool report(Context& ctx) {
  const std::string dir = "report/";
  std::map<Facet, ojson> docs;
  std::vector<std::string> missing;
  for (auto f : kAllFacets) {
    const auto p = ctx.path(fmt::format("analysis/{}.json", facet_name(f)));
    if (fs::exists(p)) {
      docs.emplace(f, read_json(p));
    } else {
      missing.push_back(fmt::format("analysis/{}.json", facet_name(f)));
    }
  }
  const auto pre = ctx.preamble();
  SummaryRows s;
  const auto emit = [&](std::string_view table, Facet f, const std::function<std::string(const ojson&)>& body) {
    const auto p = ctx.path(dir + std::string(table) + ".tsv");
    const auto it = docs.find(f);
    if (it == docs.end()) {
      if (fs::exists(p)) fs::remove(p);
      return;
    }
    write(ctx, dir + std::string(table) + ".tsv", pre + body(it->second));
  };

  emit("hourly", Facet::temporal, [&](const ojson& j) {
    std::string out = "hour\textrovert\tintrovert\n";
    for (std::size_t h = 0; h < 24; ++h) {
      out += fmt::format("{}\t{}\t{}\n", h, f4(j["hourly"]["extrovert"][h].get<double>()),
                         f4(j["hourly"]["introvert"][h].get<double>()));
    }
    return out;
  });
  emit("periods", Facet::temporal, [&](const ojson& j) {
    std::string out = "period\textrovert\tintrovert\twelch_t\tdf\tp_value\n";
    for (const auto& p : j["periods"]) {
      out += fmt::format("{}\t{}\t{}\t{}\n", p["period"].get<std::string>(), num(p["extrovert_mean"]),
                         num(p["introvert_mean"]), test_cells(p["welch"]));
      s.pair("temporal", "share_" + p["period"].get<std::string>(), p["extrovert_mean"], p["introvert_mean"]);
    }
    return out;
  });
  emit("intervals", Facet::temporal, [&](const ojson& j) {
    const auto& iv = j["intervals"];
    std::string out = "statistic\textrovert\tintrovert\n";
    for (const char* mode : {"uncapped", "capped"}) {
      const std::string prefix = std::string(mode) == "capped" ? "capped_" : "";
      for (const char* field : {"mean_hours", "std_hours"}) {
        out += fmt::format("{}{}\t{}\t{}\n", prefix, field, num(iv["extrovert"][mode][field]),
                           num(iv["introvert"][mode][field]));
        s.pair("temporal", prefix + "interval_" + field, iv["extrovert"][mode][field], iv["introvert"][mode][field]);
      }
      out += fmt::format("{}n\t{}\t{}\n", prefix, iv["extrovert"][mode]["n"].get<std::size_t>(),
                         iv["introvert"][mode]["n"].get<std::size_t>());
    }
    return out;
  });
  emit("spatial", Facet::spatial, [&](const ojson& j) {
    std::string out;
    if (j["status"] == "skipped") {
      s.add("spatial", "status", "both", "skipped");
      return "# skipped: " + j["notice"].get<std::string>() + "\nsection\tkey\textrovert\tintrovert\n";
    }
    out = "section\tkey\textrovert\tintrovert\n";
    const auto& c = j["cities"];
    for (std::size_t b = 0; b < analytics::kCityBuckets.size(); ++b) {
      out += fmt::format("cities\t{}\t{}\t{}\n", analytics::kCityBuckets[b], num(c["extrovert"]["shares"][b]),
                         num(c["introvert"]["shares"][b]));
      s.pair("spatial", fmt::format("cities_{}", analytics::kCityBuckets[b]), c["extrovert"]["shares"][b],
             c["introvert"]["shares"][b]);
    }
    const auto& poi = j["poi"];
    if (poi["status"] == "ok") {
      for (std::size_t k = 0; k < geo::kPoiCategoryCount; ++k) {
        const auto name = poi["categories"][k].get<std::string>();
        out += fmt::format("poi\t{}\t{}\t{}\n", name, num(poi["extrovert"]["shares"][k]),
                           num(poi["introvert"]["shares"][k]));
        s.pair("spatial", "poi_" + name, poi["extrovert"]["shares"][k], poi["introvert"]["shares"][k]);
      }
    } else {
      out += "# poi skipped: " + poi["notice"].get<std::string>() + "\n";
    }
    return out;
  });
  emit("sharing", Facet::sharing, [&](const ojson& j) {
    std::string out = "channel\textrovert_percent\tintrovert_percent\n";
    for (std::size_t k = 0; k < j["channels"].size(); ++k) {
      const auto name = j["channels"][k].get<std::string>();
      out += fmt::format("{}\t{}\t{}\n", name, num(j["percent"]["extrovert"][k]), num(j["percent"]["introvert"][k]));
      s.pair("sharing", name + "_percent", j["percent"]["extrovert"][k], j["percent"]["introvert"][k]);
    }
    return out;
  });
  emit("interactions", Facet::interaction, [&](const ojson& j) {
    std::string out = fmt::format("# n={} threshold={}\nrank\tfeature\tcoefficient\tabove_threshold\n",
                                  j["n"].get<std::size_t>(), f4(j["threshold"].get<double>()));
    std::size_t rank = 0;
    const double thr = j["threshold"].get<double>();
    for (const auto& r : j["ranked"]) {
      const double coef = r["coefficient"].get<double>();
      out += fmt::format("{}\t{}\t{}\t{}\n", ++rank, r["feature"].get<std::string>(), f4(coef), coef > thr ? 1 : 0);
      if (coef > thr) s.add("interaction", "corr_" + r["feature"].get<std::string>(), "both", f4(coef));
    }
    s.add("interaction", "features_above_threshold", "both", std::to_string(j["above_threshold"].size()));
    return out;
  });
  emit("purchasing", Facet::purchasing, [&](const ojson& j) {
    std::string out = test_comment("anova", j["anova"]) + test_comment("welch", j["welch"]);
    out += "cohort\tn\tmean\tstd\tmin\tq1\tmedian\tq3\tmax\n";
    for (const char* g : {"extrovert", "introvert"}) {
      const auto& m = j["summary"][g];
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", g, m["n"].get<std::size_t>(), num(m["mean"]),
                         num(m["std"]), num(m["min"]), num(m["q1"]), num(m["median"]), num(m["q3"]), num(m["max"]));
    }
    s.pair("purchasing", "mean_index", j["summary"]["extrovert"]["mean"], j["summary"]["introvert"]["mean"]);
    if (!j["anova"].contains("error")) {
      s.add("purchasing", "anova_f", "both", f4(j["anova"]["statistic"].get<double>()));
      s.add("purchasing", "anova_df2", "both", f4(j["anova"]["df2"].get<double>()));
      s.add("purchasing", "anova_p", "both", p4(j["anova"]["p_value"].get<double>()));
    }
    return out;
  });
  emit("emotion", Facet::emotion, [&](const ojson& j) {
    std::string out = "emotion\textrovert\tintrovert\twelch_t\tdf\tp_value\n";
    for (std::size_t k = 0; k < j["emotions"].size(); ++k) {
      const auto name = j["emotions"][k].get<std::string>();
      out += fmt::format("{}\t{}\t{}\t{}\n", name, num(j["means"]["extrovert"][k]), num(j["means"]["introvert"][k]),
                         test_cells(j["welch"][k]));
      s.pair("emotion", name + "_index", j["means"]["extrovert"][k], j["means"]["introvert"][k]);
    }
    return out;
  });
  emit("badges", Facet::badge, [&](const ojson& j) {
    std::string out = "# badge=" + j["badge"].get<std::string>() + "\ncohort\twith\twithout\tn\n";
    for (const char* g : {"extrovert", "introvert"}) {
      const auto& b = j["shares"][g];
      out += fmt::format("{}\t{}\t{}\t{}\n", g, num(b["with"]), num(b["without"]), b["n"].get<std::size_t>());
    }
    s.pair("badge", "with_share", j["shares"]["extrovert"]["with"], j["shares"]["introvert"]["with"]);
    return out;
  });

  std::string summary = pre;
  for (const auto& m : missing) summary += "# missing artifact: " + m + "\n";
  summary += "facet\tmetric\tcohort\tvalue\n" + s.body;
  for (const auto& m : missing) summary += fmt::format("{}\tstatus\tboth\tmissing\n", m.substr(9, m.size() - 14));
  write(ctx, dir + "summary.tsv", summary);
  return missing.empty();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view facet_name(Facet f) {
  switch (f) {
    case Facet::temporal:
      return "temporal";
    case Facet::spatial:
      return "spatial";
    case Facet::sharing:
      return "sharing";
    case Facet::interaction:
      return "interaction";
    case Facet::purchasing:
      return "purchasing";
    case Facet::emotion:
      return "emotion";
    case Facet::badge:
      break;
  }
  return "badge";
}

std::optional<Facet> facet_from_name(std::string_view s) {
  for (auto f : kAllFacets) {
    if (facet_name(f) == s) return f;
  }
  return std::nullopt;
}

void PipelineConfig::use_asset_dir(const std::string& dir) {
  const auto p = assets::asset_paths(dir);
  lexicon_path = p.lexicon;
  buying_keywords_path = p.buying_keywords;
  emotion_lexicon_path = p.emotion_lexicon;
  source_map_path = p.source_map;
  gazetteer_path = fs::exists(p.gazetteer) ? p.gazetteer : "";
  poi_path = p.poi && fs::exists(*p.poi) ? *p.poi : "";
}

void PipelineConfig::validate() const {
  const std::pair<const char*, const std::string*> required[] = {
      {"users", &users_path},
      {"tweets", &tweets_path},
      {"lexicon", &lexicon_path},
      {"buying keywords", &buying_keywords_path},
      {"emotion lexicon", &emotion_lexicon_path},
      {"source map", &source_map_path}};
  for (const auto& [what, p] : required) {
    if (p->empty()) throw Error(std::string("config: no ") + what + " path given");
    if (!fs::exists(*p)) throw Error(std::string("config: ") + what + " file '" + *p + "' does not exist");
  }
  for (const auto* p : {&gazetteer_path, &poi_path}) {
    if (!p->empty() && !fs::exists(*p)) throw Error("config: file '" + *p + "' does not exist");
  }
  if (folds < 2) throw Error("config: folds must be >= 2");
  if (min_tweets < 0) throw Error("config: min_tweets must be >= 0");
  if (out_dir.empty()) throw Error("config: no output directory given");
}

std::string PipelineConfig::to_json() const {
  ojson j;
  j["users"] = users_path;
  j["tweets"] = tweets_path;
  j["lexicon"] = lexicon_path;
  j["buying_keywords"] = buying_keywords_path;
  j["emotion_lexicon"] = emotion_lexicon_path;
  j["source_map"] = source_map_path;
  j["gazetteer"] = gazetteer_path;
  j["poi"] = poi_path;
  j["snapshot_date"] = snapshot_date.to_string();
  j["min_tweets"] = min_tweets;
  j["top_terms"] = top_terms;
  j["folds"] = folds;
  j["model"] = model_kind_name(model);
  j["svm_c"] = hp.svm_c;
  j["svm_gamma"] = hp.svm_gamma;
  j["svm_tolerance"] = hp.svm_tolerance;
  j["forest_trees"] = hp.forest_trees;
  j["forest_max_depth"] = hp.forest_max_depth;
  j["forest_min_leaf"] = hp.forest_min_leaf;
  j["forest_features"] = hp.forest_features;
  j["bayes_var_smoothing"] = hp.bayes_var_smoothing;
  j["seed"] = seed;
  j["interval_cap_hours"] = interval_cap_hours;
  j["poi_max_km"] = poi_max_km;
  j["correlation_threshold"] = correlation_threshold;
  j["badge"] = badge;
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(std::string_view content) {
  PipelineConfig c;
  try {
    const auto j = ojson::parse(content);
    if (!j.is_object()) throw Error("config: expected a JSON object");
    static const std::set<std::string> known = {
        "users", "tweets", "lexicon", "buying_keywords", "emotion_lexicon", "source_map",
        "gazetteer", "poi", "snapshot_date", "min_tweets", "top_terms", "folds", "model",
        "svm_c", "svm_gamma", "svm_tolerance", "forest_trees", "forest_max_depth",
        "forest_min_leaf", "forest_features", "bayes_var_smoothing", "seed", "out_dir",
        "interval_cap_hours", "poi_max_km", "correlation_threshold", "badge", "asset_dir"};
    for (const auto& [k, _] : j.items()) {
      if (!known.contains(k)) throw Error("config: unknown key '" + k + "'");
    }
    const auto str = [&](const char* key, std::string& dst) {
      if (j.contains(key)) dst = j[key].get<std::string>();
    };
    if (j.contains("asset_dir")) c.use_asset_dir(j["asset_dir"].get<std::string>());
    str("users", c.users_path);
    str("tweets", c.tweets_path);
    str("lexicon", c.lexicon_path);
    str("buying_keywords", c.buying_keywords_path);
    str("emotion_lexicon", c.emotion_lexicon_path);
    str("source_map", c.source_map_path);
    str("gazetteer", c.gazetteer_path);
    str("poi", c.poi_path);
    str("out_dir", c.out_dir);
    str("badge", c.badge);
    if (j.contains("snapshot_date")) {
      const auto d = Date::parse(j["snapshot_date"].get<std::string>());
      if (!d) throw Error("config: snapshot_date must be YYYY-MM-DD");
      c.snapshot_date = *d;
    }
    if (j.contains("model")) c.model = model_kind_from_name(j["model"].get<std::string>());
    c.min_tweets = j.value("min_tweets", c.min_tweets);
    c.top_terms = j.value("top_terms", c.top_terms);
    c.folds = j.value("folds", c.folds);
    c.hp.svm_c = j.value("svm_c", c.hp.svm_c);
    c.hp.svm_gamma = j.value("svm_gamma", c.hp.svm_gamma);
    c.hp.svm_tolerance = j.value("svm_tolerance", c.hp.svm_tolerance);
    c.hp.forest_trees = j.value("forest_trees", c.hp.forest_trees);
    c.hp.forest_max_depth = j.value("forest_max_depth", c.hp.forest_max_depth);
    c.hp.forest_min_leaf = j.value("forest_min_leaf", c.hp.forest_min_leaf);
    c.hp.forest_features = j.value("forest_features", c.hp.forest_features);
    c.hp.bayes_var_smoothing = j.value("bayes_var_smoothing", c.hp.bayes_var_smoothing);
    c.seed = j.value("seed", c.seed);
    c.interval_cap_hours = j.value("interval_cap_hours", c.interval_cap_hours);
    c.poi_max_km = j.value("poi_max_km", c.poi_max_km);
    c.correlation_threshold = j.value("correlation_threshold", c.correlation_threshold);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  return c;
}

std::string input_fingerprint(const PipelineConfig& config) {
  text::Fnv1a h;
  const std::pair<std::string_view, const std::string*> inputs[] = {
      {"users", &config.users_path},
      {"tweets", &config.tweets_path},
      {"lexicon", &config.lexicon_path},
      {"buying_keywords", &config.buying_keywords_path},
      {"emotion_lexicon", &config.emotion_lexicon_path},
      {"source_map", &config.source_map_path},
      {"gazetteer", &config.gazetteer_path},
      {"poi", &config.poi_path}};
  for (const auto& [name, path] : inputs) {
    if (path->empty()) continue;
    h.update(name);
    h.update(std::string_view("\0", 1));
    h.update(text::read_file(*path));
    h.update(std::string_view("\0", 1));
  }
  return h.hex();
}

void run_ingest(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "ingest", [&] { ingest(ctx); });
}

void run_features(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "features", [&] { features(ctx); });
}

void run_label(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "label", [&] { label(ctx); });
}

void run_cv(const PipelineConfig& config, std::optional<ModelKind> only) {
  Context ctx(config);
  guarded(ctx, "cv", [&] { cv(ctx, only); });
}

void run_train(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "train", [&] { train_stage(ctx); });
}

void run_classify(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "classify", [&] { classify_stage(ctx); });
}

void run_analyze(const PipelineConfig& config, Facet facet) {
  Context ctx(config);
  guarded(ctx, "analyze", [&] { analyze(ctx, facet); });
}

bool run_report(const PipelineConfig& config) {
  Context ctx(config);
  return guarded(ctx, "report", [&] { return report(ctx); });
}

bool run_pipeline(const PipelineConfig& config) {
  Context ctx(config);
  guarded(ctx, "config", [&] { config.validate(); });
  fs::create_directories(config.out_dir);
  text::write_file(ctx.path(kMarker), "pipeline\tin progress\n");
  guarded(ctx, "ingest", [&] { ingest(ctx); });
  guarded(ctx, "features", [&] { features(ctx); });
  guarded(ctx, "label", [&] { label(ctx); });
  guarded(ctx, "cv", [&] { cv(ctx, std::nullopt); });
  guarded(ctx, "train", [&] { train_stage(ctx); });
  guarded(ctx, "classify", [&] { classify_stage(ctx); });
  for (auto f : kAllFacets) guarded(ctx, "analyze", [&] { analyze(ctx, f); });
  const bool complete = guarded(ctx, "report", [&] { return report(ctx); });
  fs::remove(ctx.path(kMarker));
  return complete;
}

}  // namespace extrav::pipeline
