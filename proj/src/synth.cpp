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


#include "extrav/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "extrav/error.hpp"
#include "extrav/labeling.hpp"
#include "extrav/random.hpp"
#include "extrav/text.hpp"

namespace extrav::synth {

namespace {

using geo::PoiCategory;

constexpr double kKmPerDegree = 111.195;
constexpr int kPoiCopies = 3;

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "today",   "weather",   "coffee",  "railway", "office", "meeting", "weekend", "photo",
      "street",  "lunch",     "dinner",  "breakfast", "morning", "evening", "drizzle", "sunny",
      "bus",     "subway",    "job",     "project", "report", "class",   "lecture", "library",
      "park",    "river",     "bridge",  "milk",    "noodles", "dumplings", "rice",  "今天",
      "天气",    "咖啡",      "地铁",    "上班",    "周末",   "午饭",    "晚饭",    "下雨",
      "公园"};
  return words;
}

const std::vector<std::string>& handles() {
  static const std::vector<std::string> names = {"xiaoming", "lili",    "weibo_fan", "news_bot",
                                                 "zhang_wei", "wang_fang", "li_na",   "chen_jie"};
  return names;
}

const std::vector<std::string>& plain_sources() {
  static const std::vector<std::string> tags = {"iPhone", "Android", "Weibo Web", "HUAWEI"};
  return tags;
}

// First tag per channel in the default source map.
const std::array<std::string, 4>& channel_sources() {
  static const std::array<std::string, 4> tags = {"Sina News", "Youku", "NetEase Music", "Meitu"};
  return tags;
}

bool substring_related(const std::string& a, const std::string& b) {
  return a.find(b) != std::string::npos || b.find(a) != std::string::npos;
}

// Every planted keyword must be recognized only where it was planted.
void check_vocabulary(const CohortSpec& spec) {
  const auto& lexicon = assets::default_lexicon();
  std::vector<std::string> text_words = filler_words();
  text_words.insert(text_words.end(), handles().begin(), handles().end());
  for (const auto& list : assets::default_emotion_lexicon()) {
    text_words.insert(text_words.end(), list.begin(), list.end());
  }
  const auto& buying = assets::default_buying_keywords();
  text_words.insert(text_words.end(), buying.begin(), buying.end());
  for (std::size_t i = 0; i < text_words.size(); ++i) {
    for (std::size_t j = 0; j < text_words.size(); ++j) {
      if (i != j && text_words[i] != text_words[j] && substring_related(text_words[i], text_words[j])) {
        throw DomainError("synthetic vocabulary collision: '" + text_words[i] + "' / '" +
                          text_words[j] + "'");
      }
    }
  }
  for (const auto& t : lexicon) {
    for (const auto& w : text_words) {
      if (substring_related(t, w)) {
        throw DomainError("lexicon term '" + t + "' collides with text word '" + w + "'");
      }
    }
  }
  std::vector<std::string> planted = spec.extrovert_terms;
  planted.insert(planted.end(), spec.introvert_terms.begin(), spec.introvert_terms.end());
  std::set<std::string> seen;
  for (const auto& p : planted) {
    if (!seen.insert(p).second) throw DomainError("planted term '" + p + "' appears more than once");
    if (std::find(lexicon.begin(), lexicon.end(), p) == lexicon.end()) {
      throw DomainError("planted term '" + p + "' is not in the lexicon");
    }
    for (const auto& t : lexicon) {
      if (t != p && substring_related(t, p)) {
        throw DomainError("planted term '" + p + "' overlaps lexicon term '" + t + "'");
      }
    }
  }
}

template <std::size_t N>
void check_shares(const std::array<double, N>& s, const std::string& what) {
  double sum = 0.0;
  for (double v : s) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(what + ": share outside [0, 1]");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-6) throw DomainError(what + ": shares must sum to 1");
}

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(what + " must lie in [0, 1]");
}

void check_behavior(const CohortBehavior& b, const std::string& who) {
  check_shares(b.period_shares, who + " period_shares");
  check_shares(b.city_buckets, who + " city_buckets");
  check_shares(b.poi_shares, who + " poi_shares");
  check_shares(b.emotion_mixture, who + " emotion_mixture");
  check_probability(b.uncategorized_geo_share, who + " uncategorized_geo_share");
  check_probability(b.geo_fraction, who + " geo_fraction");
  check_probability(b.mention_rate, who + " mention_rate");
  check_probability(b.retweet_rate, who + " retweet_rate");
  check_probability(b.purchasing_mean, who + " purchasing_mean");
  check_probability(b.emotional_fraction, who + " emotional_fraction");
  check_probability(b.badge_probability, who + " badge_probability");
  double sharing = 0.0;
  for (double v : b.sharing_percent) {
    if (!(v >= 0.0 && v <= 100.0)) throw DomainError(who + " sharing_percent outside [0, 100]");
    sharing += v;
  }
  if (sharing > 100.0) throw DomainError(who + " sharing_percent sums above 100");
  if (!(b.interval_mean_hours > 0.0)) throw DomainError(who + " interval_mean_hours must be > 0");
  if (!(b.tweets_per_active_day >= 1.0)) throw DomainError(who + " tweets_per_active_day must be >= 1");
  if (!(b.purchasing_sd >= 0.0)) throw DomainError(who + " purchasing_sd must be >= 0");
}

template <std::size_t N>
std::array<double, N> mid(const std::array<double, N>& a, const std::array<double, N>& b) {
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = (a[i] + b[i]) / 2.0;
  return out;
}

std::size_t categorical(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

// Hours belonging to each posting period.
const std::array<std::vector<int>, 3>& period_hours() {
  static const std::array<std::vector<int>, 3> hours = {
      std::vector<int>{1, 2, 3, 4, 5, 6, 7},
      std::vector<int>{8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
      std::vector<int>{19, 20, 21, 22, 23, 0}};
  return hours;
}

struct GeoLayout {
  // Lattice offsets in km from the city centre.
  std::vector<std::pair<double, double>> poi_offsets;
  std::vector<std::pair<double, double>> empty_offsets;
};

const GeoLayout& geo_layout() {
  static const GeoLayout layout = [] {
    GeoLayout g;
    for (int i = -3; i <= 3; ++i) {
      for (int j = -3; j <= 3; ++j) {
        if (i == 0 && j == 0) continue;
        g.poi_offsets.emplace_back(2.0 * i, 2.0 * j);
      }
    }
    for (int i = -2; i <= 1; ++i) {
      for (int j = -2; j <= 1; ++j) g.empty_offsets.emplace_back(2.0 * i + 1.0, 2.0 * j + 1.0);
    }
    return g;
  }();
  return layout;
}

GeoPoint offset_point(const geo::GazetteerEntry& city, double dx_km, double dy_km) {
  const double lat = city.lat + dy_km / kKmPerDegree;
  const double lon = city.lon + dx_km / (kKmPerDegree * std::cos(city.lat * std::numbers::pi / 180.0));
  return {lat, lon};
}

std::pair<double, double> poi_offset(std::size_t category, int copy) {
  return geo_layout().poi_offsets[category * kPoiCopies + static_cast<std::size_t>(copy)];
}

std::vector<geo::PoiEntry> build_pois() {
  std::vector<geo::PoiEntry> out;
  for (const auto& city : assets::default_gazetteer()) {
    for (std::size_t c = 0; c < geo::kPoiCategoryCount; ++c) {
      for (int r = 0; r < kPoiCopies; ++r) {
        const auto [dx, dy] = poi_offset(c, r);
        const auto p = offset_point(city, dx, dy);
        out.push_back({fmt::format("{} {} {}", city.name, geo::category_name(geo::kAllPoiCategories[c]), r + 1),
                       geo::kAllPoiCategories[c], std::round(p.lat * 1e6) / 1e6,
                       std::round(p.lon * 1e6) / 1e6});
      }
    }
  }
  return out;
}

struct Segment {
  const CohortBehavior* behavior;
  const std::vector<std::string>* terms;
  std::vector<std::size_t> users;  // indices into SyntheticData::users
};

std::size_t draw_city_count(Rng& rng, std::size_t bucket) {
  switch (bucket) {
    case 0:
      return 1;
    case 1:
      return 2;
    case 2:
      return 3 + rng.below(3);
    case 3:
      return 6 + rng.below(15);
    default:
      return 21 + rng.below(5);
  }
}

std::vector<std::int64_t> minute_offsets(Rng& rng, const CohortBehavior& b, std::size_t n) {
  const auto shares = rng.dirichlet(b.period_shares, 300.0);
  const auto counts = largest_remainder(shares, n);
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& hours = period_hours()[p];
    for (std::size_t k = 0; k < counts[p]; ++k) {
      const int h = hours[rng.below(hours.size())];
      out.push_back(h * 60 + static_cast<std::int64_t>(rng.below(60)));
    }
  }
  rng.shuffle(out);
  return out;
}

// Minutes since epoch for n tweets whose first-to-last span is exactly
// (n - 1) * interval_mean_hours, so the pooled mean interval is planted.
std::vector<std::int64_t> timeline(Rng& rng, const CohortBehavior& b, std::size_t n,
                                   std::int64_t start_day) {
  const auto minutes = minute_offsets(rng, b, n);
  const auto span = static_cast<std::int64_t>(
      std::llround(static_cast<double>(n - 1) * b.interval_mean_hours * 60.0));
  const std::int64_t t0 = start_day * 1440 + minutes[0];
  const std::int64_t t_last = t0 + span;
  std::vector<std::int64_t> out{t0, t_last};
  const std::int64_t days = t_last / 1440 - start_day;
  if (n > 2) {
    if (days >= 2) {
      std::vector<std::int64_t> pool(static_cast<std::size_t>(days - 1));
      std::iota(pool.begin(), pool.end(), 1);
      rng.shuffle(pool);
      const auto wanted = static_cast<std::size_t>(
          std::llround(static_cast<double>(n - 2) / b.tweets_per_active_day));
      pool.resize(std::clamp<std::size_t>(wanted, 1, pool.size()));
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto day = pool[rng.below(pool.size())];
        out.push_back((start_day + day) * 1440 + minutes[i]);
      }
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        out.push_back(span > 1 ? t0 + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span - 1)))
                               : t0);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> pick_indices(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  idx.resize(std::min(k, n));
  return idx;
}

struct UserPlan {
  std::size_t city_count = 1;
  bool badge = false;
  double mention_rate = 0.0;
};

void generate_user_tweets(Rng& rng, const CohortSpec& spec, const CohortBehavior& b,
                          const std::vector<std::string>& terms, const UserRecord& user,
                          std::int64_t start_day, const UserPlan& plan,
                          std::vector<TweetRecord>& out) {
  const std::size_t n = spec.tweets_per_user;
  const auto times = timeline(rng, b, n, start_day);

  const double emotional =
      std::clamp(b.emotional_fraction + rng.uniform(-0.05, 0.05), 0.0, 1.0);
  const auto n_emotional = static_cast<std::size_t>(std::llround(emotional * static_cast<double>(n)));
  const auto emotion_counts = largest_remainder(rng.dirichlet(b.emotion_mixture, 1000.0), n_emotional);
  std::vector<int> emotion_of(n, -1);
  {
    const auto idx = pick_indices(rng, n, n_emotional);
    std::size_t k = 0;
    for (std::size_t c = 0; c < emotion_counts.size(); ++c) {
      for (std::size_t m = 0; m < emotion_counts[c]; ++m) emotion_of[idx[k++]] = static_cast<int>(c);
    }
  }

  const double buy_rate = std::clamp(rng.normal(b.purchasing_mean, b.purchasing_sd), 0.0, 1.0);
  std::vector<bool> buying(n, false);
  for (auto i : pick_indices(rng, n, static_cast<std::size_t>(std::llround(buy_rate * static_cast<double>(n))))) {
    buying[i] = true;
  }

  // Geo-tweets: the first city_count of them cover distinct cities.
  const auto& cities = assets::default_gazetteer();
  const auto n_geo = std::min(
      n, std::max(plan.city_count,
                  static_cast<std::size_t>(std::llround(b.geo_fraction * static_cast<double>(n)))));
  const auto user_cities = pick_indices(rng, cities.size(), plan.city_count);
  std::vector<std::optional<GeoPoint>> geotag(n);
  {
    const auto idx = pick_indices(rng, n, n_geo);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& city = cities[k < user_cities.size() ? user_cities[k]
                                                       : user_cities[rng.below(user_cities.size())]];
      std::pair<double, double> off;
      if (rng.bernoulli(b.uncategorized_geo_share)) {
        off = geo_layout().empty_offsets[rng.below(geo_layout().empty_offsets.size())];
      } else {
        off = poi_offset(categorical(rng, b.poi_shares), static_cast<int>(rng.below(kPoiCopies)));
      }
      const auto p = offset_point(city, off.first + rng.uniform(-0.02, 0.02),
                                  off.second + rng.uniform(-0.02, 0.02));
      geotag[idx[k]] = GeoPoint{std::round(p.lat * 1e6) / 1e6, std::round(p.lon * 1e6) / 1e6};
    }
  }

  const auto& fillers = filler_words();
  const auto& emotions = assets::default_emotion_lexicon();
  const auto& buying_words = assets::default_buying_keywords();
  for (std::size_t i = 0; i < n; ++i) {
    TweetRecord t;
    t.tweet_id = fmt::format("{}-{:04}", user.user_id, i + 1);
    t.user_id = user.user_id;
    t.timestamp = LocalDateTime(times[i] * 60);
    t.is_retweet = rng.bernoulli(b.retweet_rate);
    t.mention_count = rng.bernoulli(plan.mention_rate) ? 1 + static_cast<std::int64_t>(rng.below(2)) : 0;
    t.geotag = geotag[i];

    std::vector<std::string> words;
    const auto n_fill = 3 + rng.below(5);
    for (std::uint64_t k = 0; k < n_fill; ++k) words.push_back(fillers[rng.below(fillers.size())]);
    if (!terms.empty() && rng.bernoulli(0.35)) words.push_back(terms[rng.below(terms.size())]);
    if (emotion_of[i] >= 0) {
      const auto& list = emotions[static_cast<std::size_t>(emotion_of[i])];
      words.push_back(list[rng.below(list.size())]);
    }
    if (buying[i]) words.push_back(buying_words[rng.below(buying_words.size())]);
    rng.shuffle(words);

    std::string body;
    for (std::int64_t m = 0; m < t.mention_count; ++m) {
      body += "@" + handles()[rng.below(handles().size())] + " ";
    }
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (k) body += ' ';
      body += words[k];
    }
    if (t.is_retweet) {
      body += " //@" + handles()[rng.below(handles().size())] + ": " + fillers[rng.below(fillers.size())];
    }
    if (rng.bernoulli(0.1)) body += fmt::format(" http://t.cn/{:07}", rng.below(10'000'000));
    if (rng.bernoulli(0.05)) body += " (分享自 优酷)";
    t.text = std::move(body);
    t.source = plain_sources()[rng.below(plain_sources().size())];
    out.push_back(std::move(t));
  }
}

}  // namespace

std::vector<std::size_t> largest_remainder(std::span<const double> shares, std::size_t total) {
  double sum = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0)) throw DomainError("largest_remainder: negative share");
    sum += s;
  }
  if (!(sum > 0.0)) throw DomainError("largest_remainder: shares sum to zero");
  std::vector<std::size_t> out(shares.size());
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double exact = shares[i] / sum * static_cast<double>(total);
    out[i] = static_cast<std::size_t>(std::floor(exact));
    used += out[i];
    rem.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total; ++k, ++used) ++out[rem[k % rem.size()].second];
  return out;
}

CohortBehavior blend(const CohortBehavior& a, const CohortBehavior& b) {
  CohortBehavior m;
  m.period_shares = mid(a.period_shares, b.period_shares);
  m.interval_mean_hours = (a.interval_mean_hours + b.interval_mean_hours) / 2.0;
  m.tweets_per_active_day = (a.tweets_per_active_day + b.tweets_per_active_day) / 2.0;
  m.city_buckets = mid(a.city_buckets, b.city_buckets);
  m.poi_shares = mid(a.poi_shares, b.poi_shares);
  m.uncategorized_geo_share = (a.uncategorized_geo_share + b.uncategorized_geo_share) / 2.0;
  m.geo_fraction = (a.geo_fraction + b.geo_fraction) / 2.0;
  m.sharing_percent = mid(a.sharing_percent, b.sharing_percent);
  m.mention_rate = (a.mention_rate + b.mention_rate) / 2.0;
  m.retweet_rate = (a.retweet_rate + b.retweet_rate) / 2.0;
  m.purchasing_mean = (a.purchasing_mean + b.purchasing_mean) / 2.0;
  m.purchasing_sd = (a.purchasing_sd + b.purchasing_sd) / 2.0;
  m.emotional_fraction = (a.emotional_fraction + b.emotional_fraction) / 2.0;
  m.emotion_mixture = mid(a.emotion_mixture, b.emotion_mixture);
  m.badge_probability = (a.badge_probability + b.badge_probability) / 2.0;
  return m;
}

CohortSpec CohortSpec::reference_defaults() {
  CohortSpec s;
  auto& e = s.extrovert;
  e.period_shares = {0.085, 0.557, 0.358};
  e.interval_mean_hours = 28.10;
  e.tweets_per_active_day = 2.2;
  e.city_buckets = {0.2712, 0.14, 0.29, 0.28, 0.0188};
  const double e_rest = (1.0 - 0.6638 - 0.0458 - 0.0446) / 6.0;
  e.poi_shares = {0.6638, e_rest, e_rest, 0.0458, 0.0446, e_rest, e_rest, e_rest, e_rest};
  e.sharing_percent = {0.1939, 0.50, 0.40, 0.3539};
  e.mention_rate = 0.30;
  e.purchasing_mean = 0.0440;
  e.emotion_mixture = {0.1237, 0.1056, 0.4737, 0.2474, 0.0496};
  e.badge_probability = 0.607;

  auto& i = s.introvert;
  i.period_shares = {0.087, 0.608, 0.305};
  i.interval_mean_hours = 19.09;
  i.tweets_per_active_day = 2.95;
  i.city_buckets = {0.4432, 0.15, 0.19, 0.18, 0.0368};
  const double i_rest = (1.0 - 0.6110 - 0.0768 - 0.0259) / 6.0;
  i.poi_shares = {0.6110, i_rest, i_rest, 0.0768, 0.0259, i_rest, i_rest, i_rest, i_rest};
  i.sharing_percent = {0.6122, 0.35, 0.30, 0.1276};
  i.mention_rate = 0.22;
  i.purchasing_mean = 0.0484;
  i.emotion_mixture = {0.1545, 0.1130, 0.4515, 0.2084, 0.0726};
  i.badge_probability = 0.539;

  s.extrovert_terms = {"outgoing", "sociable", "talkative", "energetic", "assertive",
                       "enthusiastic", "friendly", "gregarious", "lively", "bold",
                       "adventurous", "expressive", "vibrant", "chatty", "spontaneous",
                       "外向", "开朗", "活泼", "健谈", "热情"};
  s.introvert_terms = {"reserved", "quiet", "shy", "introverted", "withdrawn",
                       "solitary", "private", "reflective", "thoughtful", "introspective",
                       "contemplative", "calm", "内向", "安静", "害羞",
                       "孤僻", "沉默", "独处", "腼腆", "寡言"};
  return s;
}

CohortSpec CohortSpec::null_effects() {
  auto s = reference_defaults();
  const auto m = blend(s.extrovert, s.introvert);
  s.extrovert = m;
  s.introvert = m;
  return s;
}

void CohortSpec::validate() const {
  if (users_per_group < 1) throw DomainError("users_per_group must be >= 1");
  if (tweets_per_user < 2) throw DomainError("tweets_per_user must be >= 2");
  if (!(score_sd > 0.0)) throw DomainError("score_sd must be > 0");
  if (!(score_mean >= 0.0 && score_mean <= 60.0)) throw DomainError("score_mean must lie in [0, 60]");
  if (panel_users == 1) throw DomainError("panel_users must be 0 or >= 2");
  if (extrovert_terms.empty() || introvert_terms.empty()) throw DomainError("planted term lists must be non-empty");
  check_behavior(extrovert, "extrovert");
  check_behavior(introvert, "introvert");
  check_vocabulary(*this);
}

SyntheticData synthesize(const CohortSpec& spec) {
  spec.validate();
  SyntheticData data;
  data.pois = build_pois();

  Rng rng(spec.seed);
  const auto neutral = blend(spec.extrovert, spec.introvert);
  std::vector<std::string> both_terms = spec.extrovert_terms;
  both_terms.insert(both_terms.end(), spec.introvert_terms.begin(), spec.introvert_terms.end());

  // Panel scores decide the panel members' groups through the labeling rule.
  std::vector<double> scores(spec.panel_users);
  for (auto& s : scores) s = std::clamp(std::round(rng.normal(spec.score_mean, spec.score_sd)), 0.0, 60.0);
  std::vector<Label> panel_labels;
  if (!scores.empty()) {
    const auto model = fit_score_model(scores);
    for (double s : scores) panel_labels.push_back(label_score(s, model));
  }

  Segment seg_e{&spec.extrovert, &spec.extrovert_terms, {}};
  Segment seg_i{&spec.introvert, &spec.introvert_terms, {}};
  Segment panel_e{&spec.extrovert, &spec.extrovert_terms, {}};
  Segment panel_n{&neutral, &both_terms, {}};
  Segment panel_i{&spec.introvert, &spec.introvert_terms, {}};

  for (std::size_t k = 0; k < spec.panel_users; ++k) {
    UserRecord u;
    u.user_id = fmt::format("s{:04}", k + 1);
    u.extraversion_score = scores[k];
    const auto l = panel_labels[k];
    (l == Label::extrovert ? panel_e : l == Label::introvert ? panel_i : panel_n).users.push_back(data.users.size());
    data.truth.push_back({u.user_id, std::string(label_name(l)), true});
    data.users.push_back(std::move(u));
  }
  std::vector<int> groups(2 * spec.users_per_group, 0);
  std::fill(groups.begin() + static_cast<std::ptrdiff_t>(spec.users_per_group), groups.end(), 1);
  rng.shuffle(groups);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    UserRecord u;
    u.user_id = fmt::format("u{:05}", k + 1);
    (groups[k] == 0 ? seg_e : seg_i).users.push_back(data.users.size());
    data.truth.push_back({u.user_id, groups[k] == 0 ? "extrovert" : "introvert", false});
    data.users.push_back(std::move(u));
  }

  const std::int64_t snapshot_day = spec.snapshot.days_since_epoch();
  const std::int64_t window_start = Date{2014, 11, 1}.days_since_epoch();
  const std::int64_t earliest_register = Date{2009, 8, 14}.days_since_epoch();
  const auto& fillers = filler_words();

  std::vector<std::vector<TweetRecord>> per_user(data.users.size());
  for (Segment* seg : {&panel_e, &panel_n, &panel_i, &seg_e, &seg_i}) {
    const auto& b = *seg->behavior;
    const std::size_t m = seg->users.size();
    if (m == 0) continue;
    std::vector<UserPlan> plans(m);
    {
      std::vector<std::size_t> buckets;
      const auto counts = largest_remainder(b.city_buckets, m);
      for (std::size_t c = 0; c < counts.size(); ++c) buckets.insert(buckets.end(), counts[c], c);
      rng.shuffle(buckets);
      for (std::size_t k = 0; k < m; ++k) plans[k].city_count = std::min(draw_city_count(rng, buckets[k]), spec.tweets_per_user);
      const auto n_badge = static_cast<std::size_t>(std::llround(b.badge_probability * static_cast<double>(m)));
      for (auto k : pick_indices(rng, m, n_badge)) plans[k].badge = true;
    }
    for (std::size_t k = 0; k < m; ++k) {
      auto& u = data.users[seg->users[k]];
      const auto& plan = plans[k];
      double mention = b.mention_rate + rng.normal(0.0, 0.05);
      if (u.extraversion_score) {
        mention += 0.02 * (*u.extraversion_score - spec.score_mean) / spec.score_sd;
      }
      UserPlan p = plan;
      p.mention_rate = std::clamp(mention, 0.0, 1.0);

      const auto span_days = static_cast<std::int64_t>(
          std::ceil(static_cast<double>(spec.tweets_per_user - 1) * b.interval_mean_hours / 24.0)) + 2;
      const std::int64_t hi = snapshot_day - span_days - 1;
      const std::int64_t lo = std::min(window_start, hi);
      const std::int64_t start_day = lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
      const std::int64_t reg_hi = std::max(earliest_register, start_day - 30);
      u.register_date = Date::from_days(
          earliest_register + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(reg_hi - earliest_register + 1))));
      u.gender = rng.bernoulli(0.5) ? Gender::female : Gender::male;
      u.n_tweets = static_cast<std::int64_t>(spec.tweets_per_user + rng.below(400));
      u.n_followers = static_cast<std::int64_t>(std::llround(std::exp(rng.normal(5.0, 1.5))));
      u.n_followees = static_cast<std::int64_t>(std::llround(std::exp(rng.normal(5.0, 1.0))));
      u.allow_comments = rng.bernoulli(0.8);
      u.allow_messages = rng.bernoulli(0.6);
      u.allow_location = rng.bernoulli(0.5);
      const auto n_desc = rng.below(6);
      for (std::uint64_t w = 0; w < n_desc; ++w) {
        if (w) u.description += ' ';
        u.description += fillers[rng.below(fillers.size())];
      }
      if (plan.badge) u.badges.insert(spec.badge);
      if (rng.bernoulli(0.3)) u.badges.insert("Red envelope 2015");
      if (rng.bernoulli(0.2)) u.badges.insert("Travel 2013");

      generate_user_tweets(rng, spec, b, *seg->terms, u, start_day, p, per_user[seg->users[k]]);
    }

    // Sharing channels are planted at exact per-segment counts.
    std::vector<TweetRecord*> pool;
    for (auto idx : seg->users) {
      for (auto& t : per_user[idx]) pool.push_back(&t);
    }
    rng.shuffle(pool);
    std::size_t next = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      const auto n_c = static_cast<std::size_t>(
          std::llround(b.sharing_percent[c] / 100.0 * static_cast<double>(pool.size())));
      for (std::size_t k = 0; k < n_c && next < pool.size(); ++k) pool[next++]->source = channel_sources()[c];
    }
  }

  for (auto& list : per_user) {
    sort_tweets(list);
    for (auto& t : list) data.tweets.push_back(std::move(t));
  }
  return data;
}

std::vector<TruthRow> parse_truth(std::string_view content) {
  std::vector<TruthRow> out;
  bool header = false;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "user_id\tgroup\tscored") throw ParseError("truth", line_no, "<header>", "unexpected header");
      header = true;
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw ParseError("truth", line_no, "<row>", "expected 3 columns");
    out.push_back({cols[0], cols[1], cols[2] == "1"});
  }
  return out;
}

GeneratedCorpus generate_cohort(const CohortSpec& spec, const std::string& out_dir) {
  const auto data = synthesize(spec);
  const std::string base = out_dir.empty() || out_dir.back() == '/' ? out_dir : out_dir + "/";
  GeneratedCorpus g;
  g.users_path = base + "users.jsonl";
  g.tweets_path = base + "tweets.jsonl";
  g.truth_path = base + "truth.tsv";

  std::string users;
  for (const auto& u : data.users) users += format_user(u) + "\n";
  std::string tweets;
  for (const auto& t : data.tweets) tweets += format_tweet(t) + "\n";
  std::string truth = fmt::format("# seed={}\nuser_id\tgroup\tscored\n", spec.seed);
  for (const auto& r : data.truth) truth += fmt::format("{}\t{}\t{}\n", r.user_id, r.group, r.scored ? 1 : 0);

  text::write_file(g.users_path, users);
  text::write_file(g.tweets_path, tweets);
  text::write_file(g.truth_path, truth);
  g.assets = assets::write_default_assets(base + "assets");
  g.assets.poi = assets::asset_paths(base + "assets").poi;
  text::write_file(*g.assets.poi, assets::format_poi(data.pois));
  g.user_count = data.users.size();
  g.tweet_count = data.tweets.size();
  return g;
}

}  // namespace extrav::synth
