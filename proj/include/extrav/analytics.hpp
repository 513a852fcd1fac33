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

// Behavioral indexes compared between extrovert and introvert cohorts:
// posting time, spatial spread, sharing, interaction, buying, emotion, badges.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extrav/corpus.hpp"
#include "extrav/geo.hpp"
#include "extrav/stats.hpp"

namespace extrav::analytics {

enum class Cohort { extrovert, introvert };
std::string_view cohort_name(Cohort c);

// --- temporal --------------------------------------------------------------

/// Fraction of tweets per local hour; sums to 1.
std::array<double, 24> hourly_distribution(std::span<const TweetRecord> tweets);

/// Shares in [01:00, 08:00), [08:00, 19:00), [19:00, 01:00); sums to 1.
std::array<double, 3> period_shares(std::span<const TweetRecord> tweets);
inline constexpr std::array<std::string_view, 3> kPeriodNames = {"01:00-08:00", "08:00-19:00",
                                                                 "19:00-01:00"};

struct IntervalStats {
  double mean_hours = 0.0;
  double std_hours = 0.0;  ///< population
  std::size_t n = 0;
};

/// Consecutive gaps in hours, dropping gaps above cap_hours when given.
std::vector<double> posting_intervals(std::span<const TweetRecord> tweets,
                                      std::optional<double> cap_hours = std::nullopt);
IntervalStats interval_stats(std::span<const TweetRecord> tweets,
                             std::optional<double> cap_hours = std::nullopt);
/// Statistics of all users' retained intervals pooled together.
IntervalStats pooled_interval_stats(std::span<const std::vector<double>> per_user_intervals);

// --- spatial ---------------------------------------------------------------

inline constexpr std::array<std::string_view, 5> kCityBuckets = {"1", "2", "3-5", "6-20", ">20"};
std::size_t city_bucket(std::size_t distinct_cities);

/// Distinct city names among a user's geotagged tweets (unresolved points skipped).
std::vector<std::string> user_cities(std::span<const TweetRecord> tweets, const geo::Gazetteer& g);

/// Shares of users per bucket; users without any resolved city are not counted.
std::array<double, 5> city_count_histogram(std::span<const std::vector<std::string>> per_user_cities);

struct PoiShares {
  std::array<std::size_t, geo::kPoiCategoryCount> counts{};
  std::size_t uncategorized = 0;
  /// Over categorized geo-tweets only.
  std::array<double, geo::kPoiCategoryCount> shares{};
};

PoiShares poi_shares(std::span<const TweetRecord> tweets, const geo::PoiIndex& index,
                     double max_km = 0.5);

// --- sharing ---------------------------------------------------------------

enum class Channel { news, video, music, selfie, other };
inline constexpr std::array<Channel, 4> kSharingChannels = {Channel::news, Channel::video,
                                                            Channel::music, Channel::selfie};
std::string_view channel_name(Channel c);
std::optional<Channel> channel_from_name(std::string_view s);

using SourceMap = std::map<std::string, Channel, std::less<>>;
/// JSON object mapping raw source tags to news/video/music/selfie/other.
SourceMap load_source_map(const std::string& path);
SourceMap parse_source_map(std::string_view json);

/// Percentage of all tweets whose source maps to each channel (news, video, music, selfie).
std::array<double, 4> sharing_shares(std::span<const TweetRecord> tweets, const SourceMap& map);

// --- interaction -----------------------------------------------------------

struct Correlation {
  std::string feature;
  double coefficient = 0.0;
};

/// Pearson of each feature column against the scores, sorted descending
/// (ties by feature name). Constant columns are skipped.
std::vector<Correlation> interaction_correlations(std::span<const std::string> names,
                                                  std::span<const std::vector<double>> columns,
                                                  std::span<const double> scores);

// --- buying ----------------------------------------------------------------

/// Fraction of tweets containing at least one keyword, case-insensitive.
double purchasing_index(std::span<const TweetRecord> tweets, std::span<const std::string> keywords);

// --- emotion ---------------------------------------------------------------

enum class Emotion { anger, disgust, happiness, sadness, fear };
inline constexpr std::array<Emotion, 5> kAllEmotions = {Emotion::anger, Emotion::disgust,
                                                        Emotion::happiness, Emotion::sadness,
                                                        Emotion::fear};
std::string_view emotion_name(Emotion e);

/// Maps a tweet to one of five emotions or to neutral (nullopt).
class EmotionClassifier {
 public:
  virtual ~EmotionClassifier() = default;
  virtual std::optional<Emotion> classify(std::string_view text) const = 0;
};

using EmotionLexicon = std::array<std::vector<std::string>, 5>;
/// JSON object with the five category names as keys and keyword arrays as values.
EmotionLexicon load_emotion_lexicon(const std::string& path);
EmotionLexicon parse_emotion_lexicon(std::string_view json);

/// Keyword-count classifier: the unique category with the most hits, else neutral.
class LexiconEmotionClassifier final : public EmotionClassifier {
 public:
  explicit LexiconEmotionClassifier(EmotionLexicon lexicon);
  std::optional<Emotion> classify(std::string_view text) const override;

 private:
  EmotionLexicon lexicon_;
};

std::optional<Emotion> classify_emotion_default(std::string_view text, const EmotionLexicon& lexicon);

/// Per-emotion share of the user's emotional tweets; nullopt if none are emotional.
std::optional<std::array<double, 5>> emotion_indices(std::span<const TweetRecord> tweets,
                                                     const EmotionClassifier& classifier);

// --- badges ----------------------------------------------------------------

struct BadgeShares {
  double with = 0.0;
  double without = 0.0;
};

BadgeShares badge_shares(std::span<const UserRecord* const> users, std::string_view badge);

// --- distributions ---------------------------------------------------------

struct IndexDistribution {
  Cohort cohort;
  std::vector<double> values;
  stats::Summary summary;
};

/// Values must lie in [0, 1].
IndexDistribution make_distribution(Cohort cohort, std::vector<double> values);

}  // namespace extrav::analytics
