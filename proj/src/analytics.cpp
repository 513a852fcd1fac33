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


#include "extrav/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>

#include "extrav/error.hpp"
#include "extrav/text.hpp"

namespace extrav::analytics {

namespace {

void require_tweets(std::span<const TweetRecord> tweets, const char* what) {
  if (tweets.empty()) throw DomainError(std::string(what) + ": empty tweet list");
}

std::size_t period_of(int hour) {
  if (hour >= 1 && hour < 8) return 0;
  if (hour >= 8 && hour < 19) return 1;
  return 2;
}

}  // namespace

std::string_view cohort_name(Cohort c) { return c == Cohort::extrovert ? "extrovert" : "introvert"; }

// ---------------------------------------------------------------------------

std::array<double, 24> hourly_distribution(std::span<const TweetRecord> tweets) {
  require_tweets(tweets, "hourly_distribution");
  std::array<double, 24> out{};
  for (const auto& t : tweets) out[static_cast<std::size_t>(t.timestamp.hour())] += 1.0;
  for (double& v : out) v /= static_cast<double>(tweets.size());
  return out;
}

std::array<double, 3> period_shares(std::span<const TweetRecord> tweets) {
  require_tweets(tweets, "period_shares");
  std::array<double, 3> out{};
  for (const auto& t : tweets) out[period_of(t.timestamp.hour())] += 1.0;
  for (double& v : out) v /= static_cast<double>(tweets.size());
  return out;
}

std::vector<double> posting_intervals(std::span<const TweetRecord> tweets,
                                      std::optional<double> cap_hours) {
  std::vector<double> out;
  for (std::size_t i = 1; i < tweets.size(); ++i) {
    const double h =
        static_cast<double>(tweets[i].timestamp.seconds() - tweets[i - 1].timestamp.seconds()) /
        3600.0;
    if (cap_hours && h > *cap_hours) continue;
    out.push_back(h);
  }
  return out;
}

IntervalStats interval_stats(std::span<const TweetRecord> tweets, std::optional<double> cap_hours) {
  if (tweets.size() < 2) throw DomainError("interval_stats: needs at least 2 tweets");
  const auto gaps = posting_intervals(tweets, cap_hours);
  if (gaps.empty()) throw DomainError("interval_stats: every interval exceeds the cap");
  return {stats::mean(gaps), std::sqrt(stats::population_variance(gaps)), gaps.size()};
}

IntervalStats pooled_interval_stats(std::span<const std::vector<double>> per_user_intervals) {
  // Pooled via running sums so no concatenated copy is needed.
  double n = 0.0, sum = 0.0;
  for (const auto& g : per_user_intervals) {
    for (double v : g) {
      sum += v;
      n += 1.0;
    }
  }
  if (n == 0.0) throw DomainError("pooled_interval_stats: no intervals");
  const double m = sum / n;
  double ss = 0.0;
  for (const auto& g : per_user_intervals) {
    for (double v : g) ss += (v - m) * (v - m);
  }
  return {m, std::sqrt(ss / n), static_cast<std::size_t>(n)};
}

// ---------------------------------------------------------------------------

std::size_t city_bucket(std::size_t n) {
  if (n <= 1) return 0;
  if (n == 2) return 1;
  if (n <= 5) return 2;
  if (n <= 20) return 3;
  return 4;
}

std::vector<std::string> user_cities(std::span<const TweetRecord> tweets, const geo::Gazetteer& g) {
  std::set<std::string> cities;
  for (const auto& t : tweets) {
    if (!t.geotag) continue;
    if (auto c = g.reverse_geocode(t.geotag->lat, t.geotag->lon)) cities.insert(std::move(*c));
  }
  return {cities.begin(), cities.end()};
}

std::array<double, 5> city_count_histogram(std::span<const std::vector<std::string>> per_user_cities) {
  std::array<double, 5> out{};
  double users = 0.0;
  for (const auto& cities : per_user_cities) {
    const std::set<std::string_view> distinct(cities.begin(), cities.end());
    if (distinct.empty()) continue;
    out[city_bucket(distinct.size())] += 1.0;
    users += 1.0;
  }
  if (users > 0.0) {
    for (double& v : out) v /= users;
  }
  return out;
}

PoiShares poi_shares(std::span<const TweetRecord> tweets, const geo::PoiIndex& index, double max_km) {
  PoiShares s;
  std::size_t categorized = 0;
  for (const auto& t : tweets) {
    if (!t.geotag) continue;
    if (const auto c = index.classify(t.geotag->lat, t.geotag->lon, max_km)) {
      ++s.counts[static_cast<std::size_t>(*c)];
      ++categorized;
    } else {
      ++s.uncategorized;
    }
  }
  if (categorized > 0) {
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      s.shares[i] = static_cast<double>(s.counts[i]) / static_cast<double>(categorized);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::news:
      return "news";
    case Channel::video:
      return "video";
    case Channel::music:
      return "music";
    case Channel::selfie:
      return "selfie";
    case Channel::other:
      break;
  }
  return "other";
}

std::optional<Channel> channel_from_name(std::string_view s) {
  for (auto c : {Channel::news, Channel::video, Channel::music, Channel::selfie, Channel::other}) {
    if (channel_name(c) == s) return c;
  }
  return std::nullopt;
}

SourceMap parse_source_map(std::string_view content) {
  SourceMap out;
  try {
    const auto j = nlohmann::json::parse(content);
    if (!j.is_object()) throw Error("source map: expected a JSON object");
    for (const auto& [tag, v] : j.items()) {
      const auto c = v.is_string() ? channel_from_name(v.get<std::string>()) : std::nullopt;
      if (!c) throw Error("source map: tag '" + tag + "' maps to an unknown channel");
      out.emplace(tag, *c);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("source map: ") + e.what());
  }
  return out;
}

SourceMap load_source_map(const std::string& path) { return parse_source_map(text::read_file(path)); }

std::array<double, 4> sharing_shares(std::span<const TweetRecord> tweets, const SourceMap& map) {
  std::array<double, 4> out{};
  if (tweets.empty()) return out;
  for (const auto& t : tweets) {
    const auto it = map.find(t.source);
    if (it == map.end() || it->second == Channel::other) continue;
    out[static_cast<std::size_t>(it->second)] += 1.0;
  }
  for (double& v : out) v = 100.0 * v / static_cast<double>(tweets.size());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Correlation> interaction_correlations(std::span<const std::string> names,
                                                  std::span<const std::vector<double>> columns,
                                                  std::span<const double> scores) {
  if (names.size() != columns.size()) throw DomainError("interaction_correlations: name/column mismatch");
  std::vector<Correlation> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& col = columns[i];
    if (col.size() >= 2 && std::adjacent_find(col.begin(), col.end(), std::not_equal_to<>()) == col.end()) {
      continue;
    }
    out.push_back({names[i], stats::pearson(col, scores)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Correlation& a, const Correlation& b) {
    if (a.coefficient != b.coefficient) return a.coefficient > b.coefficient;
    return a.feature < b.feature;
  });
  return out;
}

// ---------------------------------------------------------------------------

double purchasing_index(std::span<const TweetRecord> tweets, std::span<const std::string> keywords) {
  require_tweets(tweets, "purchasing_index");
  if (keywords.empty()) throw DomainError("purchasing_index: empty keyword list");
  std::vector<std::string> lowered;
  lowered.reserve(keywords.size());
  for (const auto& k : keywords) lowered.push_back(text::ascii_lower(k));
  std::size_t hits = 0;
  for (const auto& t : tweets) {
    const auto body = text::ascii_lower(t.text);
    hits += std::any_of(lowered.begin(), lowered.end(),
                        [&](const std::string& k) { return text::contains(body, k); });
  }
  return static_cast<double>(hits) / static_cast<double>(tweets.size());
}

// ---------------------------------------------------------------------------

std::string_view emotion_name(Emotion e) {
  switch (e) {
    case Emotion::anger:
      return "anger";
    case Emotion::disgust:
      return "disgust";
    case Emotion::happiness:
      return "happiness";
    case Emotion::sadness:
      return "sadness";
    case Emotion::fear:
      break;
  }
  return "fear";
}

EmotionLexicon parse_emotion_lexicon(std::string_view content) {
  EmotionLexicon lex;
  try {
    const auto j = nlohmann::json::parse(content);
    if (!j.is_object()) throw Error("emotion lexicon: expected a JSON object");
    for (const auto& [key, _] : j.items()) {
      const bool known = std::any_of(kAllEmotions.begin(), kAllEmotions.end(),
                                     [&](Emotion e) { return emotion_name(e) == key; });
      if (!known) throw Error("emotion lexicon: unknown category '" + key + "'");
    }
    for (auto e : kAllEmotions) {
      const auto it = j.find(std::string(emotion_name(e)));
      if (it == j.end()) throw Error("emotion lexicon: missing category '" + std::string(emotion_name(e)) + "'");
      for (const auto& w : *it) {
        lex[static_cast<std::size_t>(e)].push_back(text::ascii_lower(w.get<std::string>()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("emotion lexicon: ") + e.what());
  }
  return lex;
}

EmotionLexicon load_emotion_lexicon(const std::string& path) {
  return parse_emotion_lexicon(text::read_file(path));
}

std::optional<Emotion> classify_emotion_default(std::string_view text_in, const EmotionLexicon& lexicon) {
  const auto body = text::ascii_lower(text_in);
  std::array<std::size_t, 5> hits{};
  for (std::size_t c = 0; c < 5; ++c) {
    for (const auto& w : lexicon[c]) hits[c] += text::count_occurrences(body, w);
  }
  const auto best = *std::max_element(hits.begin(), hits.end());
  if (best == 0 || std::count(hits.begin(), hits.end(), best) > 1) return std::nullopt;
  return kAllEmotions[static_cast<std::size_t>(std::find(hits.begin(), hits.end(), best) - hits.begin())];
}

LexiconEmotionClassifier::LexiconEmotionClassifier(EmotionLexicon lexicon) : lexicon_(std::move(lexicon)) {
  for (auto& words : lexicon_) {
    for (auto& w : words) w = text::ascii_lower(w);
  }
}

std::optional<Emotion> LexiconEmotionClassifier::classify(std::string_view text_in) const {
  return classify_emotion_default(text_in, lexicon_);
}

std::optional<std::array<double, 5>> emotion_indices(std::span<const TweetRecord> tweets,
                                                     const EmotionClassifier& classifier) {
  std::array<double, 5> counts{};
  double emotional = 0.0;
  for (const auto& t : tweets) {
    if (const auto e = classifier.classify(t.text)) {
      counts[static_cast<std::size_t>(*e)] += 1.0;
      emotional += 1.0;
    }
  }
  if (emotional == 0.0) return std::nullopt;
  for (double& c : counts) c /= emotional;
  return counts;
}

// ---------------------------------------------------------------------------

BadgeShares badge_shares(std::span<const UserRecord* const> users, std::string_view badge) {
  if (users.empty()) throw DomainError("badge_shares: empty cohort");
  const std::string key(badge);
  std::size_t with = 0;
  for (const auto* u : users) with += u->badges.contains(key);
  const double share = static_cast<double>(with) / static_cast<double>(users.size());
  return {share, 1.0 - share};
}

IndexDistribution make_distribution(Cohort cohort, std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("index distribution values must lie in [0, 1]");
  }
  auto summary = stats::summarize(values);
  return {cohort, std::move(values), summary};
}

}  // namespace extrav::analytics
