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


#include "extrav/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "extrav/error.hpp"
#include "extrav/text.hpp"

namespace extrav {

namespace {

using nlohmann::json;

constexpr std::int64_t kSecondsPerDay = 86400;

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

bool parse_fixed_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

class LineContext {
 public:
  LineContext(const std::string& source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(source_, line_, field, what);
  }

  const json& require(const json& obj, const char* key) const {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing");
    return *it;
  }

  std::string string_field(const json& obj, const char* key) const {
    const auto& v = require(obj, key);
    if (!v.is_string()) fail(key, "expected string");
    return v.get<std::string>();
  }

  bool bool_field(const json& obj, const char* key) const {
    const auto& v = require(obj, key);
    if (!v.is_boolean()) fail(key, "expected boolean");
    return v.get<bool>();
  }

  std::int64_t count_field(const json& obj, const char* key) const {
    const auto& v = require(obj, key);
    if (!v.is_number_integer()) fail(key, "expected integer");
    const auto n = v.get<std::int64_t>();
    if (n < 0) fail(key, "must be non-negative, got " + std::to_string(n));
    return n;
  }

  double number_field(const json& v, const char* key) const {
    if (!v.is_number()) fail(key, "expected number");
    return v.get<double>();
  }

  void reject_unknown(const json& obj, std::initializer_list<std::string_view> known) const {
    for (const auto& [k, _] : obj.items()) {
      if (std::find(known.begin(), known.end(), k) == known.end()) fail(k, "unknown field");
    }
  }

 private:
  const std::string& source_;
  std::size_t line_;
};

json parse_line(std::string_view line, const LineContext& ctx) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    ctx.fail("<record>", std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) ctx.fail("<record>", "expected a JSON object");
  return obj;
}

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    const auto line = text::trim(content.substr(start, end - start));
    if (!line.empty()) fn(line, line_no);
    start = end + 1;
  }
}

Gender parse_gender(const std::string& code, const LineContext& ctx) {
  if (code == "m") return Gender::male;
  if (code == "f") return Gender::female;
  if (code == "u") return Gender::unknown;
  ctx.fail("gender", "expected \"m\", \"f\" or \"u\", got \"" + code + "\"");
}

UserRecord parse_user(std::string_view line, const LineContext& ctx) {
  const json obj = parse_line(line, ctx);
  ctx.reject_unknown(obj, {"user_id", "gender", "register_date", "n_tweets", "n_followers",
                           "n_followees", "allow_comments", "allow_messages", "allow_location",
                           "description", "badges", "extraversion_score"});
  UserRecord u;
  u.user_id = ctx.string_field(obj, "user_id");
  if (u.user_id.empty()) ctx.fail("user_id", "must be non-empty");
  u.gender = parse_gender(ctx.string_field(obj, "gender"), ctx);
  const auto reg = Date::parse(ctx.string_field(obj, "register_date"));
  if (!reg) ctx.fail("register_date", "expected YYYY-MM-DD");
  u.register_date = *reg;
  u.n_tweets = ctx.count_field(obj, "n_tweets");
  u.n_followers = ctx.count_field(obj, "n_followers");
  u.n_followees = ctx.count_field(obj, "n_followees");
  u.allow_comments = ctx.bool_field(obj, "allow_comments");
  u.allow_messages = ctx.bool_field(obj, "allow_messages");
  u.allow_location = ctx.bool_field(obj, "allow_location");
  u.description = ctx.string_field(obj, "description");
  const auto& badges = ctx.require(obj, "badges");
  if (!badges.is_array()) ctx.fail("badges", "expected array of strings");
  for (const auto& b : badges) {
    if (!b.is_string()) ctx.fail("badges", "expected array of strings");
    u.badges.insert(b.get<std::string>());
  }
  if (const auto it = obj.find("extraversion_score"); it != obj.end()) {
    const double s = ctx.number_field(*it, "extraversion_score");
    if (!(s >= 0.0 && s <= 60.0)) ctx.fail("extraversion_score", "must lie in [0, 60]");
    u.extraversion_score = s;
  }
  return u;
}

TweetRecord parse_tweet(std::string_view line, const LineContext& ctx) {
  const json obj = parse_line(line, ctx);
  ctx.reject_unknown(obj, {"tweet_id", "user_id", "timestamp", "text", "source", "is_retweet",
                           "mention_count", "lat", "lon"});
  TweetRecord t;
  t.tweet_id = ctx.string_field(obj, "tweet_id");
  if (t.tweet_id.empty()) ctx.fail("tweet_id", "must be non-empty");
  t.user_id = ctx.string_field(obj, "user_id");
  const auto ts = LocalDateTime::parse(ctx.string_field(obj, "timestamp"));
  if (!ts) ctx.fail("timestamp", "expected YYYY-MM-DDThh:mm:ss");
  t.timestamp = *ts;
  t.text = ctx.string_field(obj, "text");
  t.source = ctx.string_field(obj, "source");
  t.is_retweet = ctx.bool_field(obj, "is_retweet");
  t.mention_count = ctx.count_field(obj, "mention_count");
  const auto lat = obj.find("lat");
  const auto lon = obj.find("lon");
  if ((lat == obj.end()) != (lon == obj.end())) {
    ctx.fail(lat == obj.end() ? "lat" : "lon", "lat and lon must appear together");
  }
  if (lat != obj.end()) {
    GeoPoint p{ctx.number_field(*lat, "lat"), ctx.number_field(*lon, "lon")};
    if (!(p.lat >= -90.0 && p.lat <= 90.0)) ctx.fail("lat", "must lie in [-90, 90]");
    if (!(p.lon >= -180.0 && p.lon <= 180.0)) ctx.fail("lon", "must lie in [-180, 180]");
    t.geotag = p;
  }
  return t;
}

}  // namespace

std::int64_t Date::days_since_epoch() const {
  return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

Date Date::from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::optional<Date> Date::parse(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  Date d;
  if (!parse_fixed_int(s.substr(0, 4), d.year) || !parse_fixed_int(s.substr(5, 2), d.month) ||
      !parse_fixed_int(s.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    return std::nullopt;
  }
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

LocalDateTime::LocalDateTime(Date date, int hour, int minute, int second)
    : seconds_(date.days_since_epoch() * kSecondsPerDay + hour * 3600 + minute * 60 + second) {}

std::optional<LocalDateTime> LocalDateTime::parse(std::string_view s) {
  if (s.size() != 19 || s[10] != 'T' || s[13] != ':' || s[16] != ':') return std::nullopt;
  const auto date = Date::parse(s.substr(0, 10));
  int h, m, sec;
  if (!date || !parse_fixed_int(s.substr(11, 2), h) || !parse_fixed_int(s.substr(14, 2), m) ||
      !parse_fixed_int(s.substr(17, 2), sec)) {
    return std::nullopt;
  }
  if (h > 23 || m > 59 || sec > 59) return std::nullopt;
  return LocalDateTime(*date, h, m, sec);
}

Date LocalDateTime::date() const { return Date::from_days(floor_div(seconds_, kSecondsPerDay)); }

int LocalDateTime::hour() const {
  return static_cast<int>((seconds_ - floor_div(seconds_, kSecondsPerDay) * kSecondsPerDay) / 3600);
}

int LocalDateTime::minute() const {
  return static_cast<int>((seconds_ - floor_div(seconds_, 3600) * 3600) / 60);
}

int LocalDateTime::weekday() const {
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  const auto days = floor_div(seconds_, kSecondsPerDay);
  return static_cast<int>(((days + 3) % 7 + 7) % 7);
}

std::string LocalDateTime::to_string() const {
  const auto secs = seconds_ - floor_div(seconds_, 60) * 60;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02d", date().to_string().c_str(), hour(),
                minute(), static_cast<int>(secs));
  return buf;
}

void sort_tweets(std::vector<TweetRecord>& tweets) {
  std::sort(tweets.begin(), tweets.end(), [](const TweetRecord& a, const TweetRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.tweet_id < b.tweet_id;
  });
}

Corpus::Corpus(Date snapshot, std::vector<UserRecord> users, TweetGroups tweets)
    : snapshot_(snapshot), users_(std::move(users)), tweets_(std::move(tweets)) {
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (!index_.emplace(users_[i].user_id, i).second) {
      throw Error("duplicate user_id '" + users_[i].user_id + "' in corpus");
    }
  }
  for (auto& [uid, list] : tweets_) {
    if (!index_.contains(uid)) throw Error("tweets reference unknown user '" + uid + "'");
    sort_tweets(list);
  }
}

const std::vector<TweetRecord>& Corpus::tweets_of(const std::string& user_id) const {
  static const std::vector<TweetRecord> kEmpty;
  const auto it = tweets_.find(user_id);
  return it == tweets_.end() ? kEmpty : it->second;
}

const UserRecord* Corpus::find_user(const std::string& user_id) const {
  const auto it = index_.find(user_id);
  return it == index_.end() ? nullptr : &users_[it->second];
}

std::size_t Corpus::tweet_count() const {
  std::size_t n = 0;
  for (const auto& [_, list] : tweets_) n += list.size();
  return n;
}

std::vector<UserRecord> parse_users(std::string_view content, const std::string& source_name,
                                    const std::optional<Date>& snapshot) {
  std::vector<UserRecord> users;
  std::set<std::string> seen;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    const LineContext ctx(source_name, line_no);
    auto u = parse_user(line, ctx);
    if (!seen.insert(u.user_id).second) ctx.fail("user_id", "duplicate '" + u.user_id + "'");
    if (snapshot && u.register_date > *snapshot) {
      ctx.fail("register_date", "after snapshot date " + snapshot->to_string());
    }
    users.push_back(std::move(u));
  });
  return users;
}

std::vector<UserRecord> load_users(const std::string& path, const std::optional<Date>& snapshot) {
  return parse_users(text::read_file(path), path, snapshot);
}

TweetLoad parse_tweets(std::string_view content, const std::set<std::string>& user_ids,
                       const std::string& source_name) {
  TweetLoad out;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    auto t = parse_tweet(line, LineContext(source_name, line_no));
    ++out.total;
    if (!user_ids.contains(t.user_id)) {
      ++out.orphans;
      return;
    }
    out.groups[t.user_id].push_back(std::move(t));
  });
  for (auto& [_, list] : out.groups) sort_tweets(list);
  return out;
}

TweetLoad load_tweets(const std::string& path, const std::set<std::string>& user_ids) {
  return parse_tweets(text::read_file(path), user_ids, path);
}

Corpus filter_active(const Corpus& corpus, std::int64_t min_tweets) {
  std::vector<UserRecord> kept;
  TweetGroups groups;
  for (const auto& u : corpus.users()) {
    const auto& tweets = corpus.tweets_of(u.user_id);
    if (static_cast<std::int64_t>(tweets.size()) > min_tweets) {
      kept.push_back(u);
      groups.emplace(u.user_id, tweets);
    }
  }
  return Corpus(corpus.snapshot_date(), std::move(kept), std::move(groups));
}

std::string_view gender_code(Gender g) {
  switch (g) {
    case Gender::male:
      return "m";
    case Gender::female:
      return "f";
    case Gender::unknown:
      break;
  }
  return "u";
}

std::string format_user(const UserRecord& u) {
  nlohmann::ordered_json j;
  j["user_id"] = u.user_id;
  j["gender"] = gender_code(u.gender);
  j["register_date"] = u.register_date.to_string();
  j["n_tweets"] = u.n_tweets;
  j["n_followers"] = u.n_followers;
  j["n_followees"] = u.n_followees;
  j["allow_comments"] = u.allow_comments;
  j["allow_messages"] = u.allow_messages;
  j["allow_location"] = u.allow_location;
  j["description"] = u.description;
  j["badges"] = nlohmann::ordered_json::array();
  for (const auto& b : u.badges) j["badges"].push_back(b);
  if (u.extraversion_score) j["extraversion_score"] = *u.extraversion_score;
  return j.dump();
}

std::string format_tweet(const TweetRecord& t) {
  nlohmann::ordered_json j;
  j["tweet_id"] = t.tweet_id;
  j["user_id"] = t.user_id;
  j["timestamp"] = t.timestamp.to_string();
  j["text"] = t.text;
  j["source"] = t.source;
  j["is_retweet"] = t.is_retweet;
  j["mention_count"] = t.mention_count;
  if (t.geotag) {
    j["lat"] = t.geotag->lat;
    j["lon"] = t.geotag->lon;
  }
  return j.dump();
}

}  // namespace extrav
