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


#pragma once

// Deterministic synthetic cohorts with planted behavioral effects, written in
// the corpus file formats together with a matching asset directory.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extrav/assets.hpp"
#include "extrav/corpus.hpp"
#include "extrav/geo.hpp"

namespace extrav::synth {

/// Planted per-group behavior. Shares are fractions unless noted.
struct CohortBehavior {
  /// [01:00, 08:00), [08:00, 19:00), [19:00, 01:00).
  std::array<double, 3> period_shares{};
  /// Pooled mean gap between consecutive tweets, hours.
  double interval_mean_hours = 24.0;
  /// Intermediate tweets per active day; controls how bursty posting is.
  double tweets_per_active_day = 4.0;
  /// Buckets 1, 2, 3-5, 6-20, >20 distinct cities.
  std::array<double, 5> city_buckets{};
  std::array<double, geo::kPoiCategoryCount> poi_shares{};
  /// Geo-tweets placed away from every POI.
  double uncategorized_geo_share = 0.2;
  double geo_fraction = 0.3;
  /// Percent of all tweets per channel: news, video, music, selfie.
  std::array<double, 4> sharing_percent{};
  double mention_rate = 0.25;
  double retweet_rate = 0.25;
  double purchasing_mean = 0.045;
  double purchasing_sd = 0.01;
  double emotional_fraction = 0.7;
  /// anger, disgust, happiness, sadness, fear.
  std::array<double, 5> emotion_mixture{};
  double badge_probability = 0.5;
};

/// Component-wise midpoint, used for the neutral panel members.
CohortBehavior blend(const CohortBehavior& a, const CohortBehavior& b);

struct CohortSpec {
  /// Unscored population users per group (extrovert, introvert).
  std::size_t users_per_group = 150;
  std::size_t tweets_per_user = 200;
  /// Users carrying a self-report score; their behavior follows their label.
  std::size_t panel_users = 145;
  double score_mean = 39.03;
  double score_sd = 7.55;
  Date snapshot{2016, 3, 31};
  CohortBehavior extrovert;
  CohortBehavior introvert;
  std::vector<std::string> extrovert_terms;
  std::vector<std::string> introvert_terms;
  /// Badge whose share is planted.
  std::string badge = "Binding-Taobao";
  std::uint64_t seed = 20170317;

  static CohortSpec reference_defaults();
  /// Same behavior for both groups; only the term usage differs.
  static CohortSpec null_effects();
  /// Throws DomainError on out-of-range values.
  void validate() const;
};

struct TruthRow {
  std::string user_id;
  /// "extrovert", "neutral" or "introvert".
  std::string group;
  bool scored = false;
};

struct SyntheticData {
  std::vector<UserRecord> users;
  std::vector<TweetRecord> tweets;
  std::vector<TruthRow> truth;
  std::vector<geo::PoiEntry> pois;
};

SyntheticData synthesize(const CohortSpec& spec);

struct GeneratedCorpus {
  std::string users_path;
  std::string tweets_path;
  std::string truth_path;
  assets::AssetPaths assets;
  std::size_t user_count = 0;
  std::size_t tweet_count = 0;
};

/// Writes users.jsonl, tweets.jsonl, truth.tsv and assets/ under out_dir.
/// Identical specs produce identical bytes.
GeneratedCorpus generate_cohort(const CohortSpec& spec, const std::string& out_dir);

std::vector<TruthRow> parse_truth(std::string_view content);

/// Integer apportionment of `total` by `shares` (largest remainder; ties to
/// the lower index). Shares are normalized first.
std::vector<std::size_t> largest_remainder(std::span<const double> shares, std::size_t total);

}  // namespace extrav::synth
