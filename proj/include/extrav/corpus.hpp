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

// Canonical data model for archived users and tweets, plus the
// line-delimited JSON readers and writers. See docs/data-formats.md.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace extrav {

/// Calendar date, proleptic Gregorian.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  /// Days since 1970-01-01.
  std::int64_t days_since_epoch() const;
  static Date from_days(std::int64_t days);
  /// Parses "YYYY-MM-DD"; returns nullopt on malformed or impossible dates.
  static std::optional<Date> parse(std::string_view s);
  std::string to_string() const;

  friend auto operator<=>(const Date&, const Date&) = default;
};

/// Local wall-clock time; no time zone is attached or converted.
class LocalDateTime {
 public:
  LocalDateTime() = default;
  explicit LocalDateTime(std::int64_t seconds) : seconds_(seconds) {}
  LocalDateTime(Date date, int hour, int minute, int second = 0);

  /// Parses "YYYY-MM-DDThh:mm:ss".
  static std::optional<LocalDateTime> parse(std::string_view s);

  std::int64_t seconds() const noexcept { return seconds_; }
  Date date() const;
  int hour() const;
  int minute() const;
  /// 0 = Monday ... 6 = Sunday.
  int weekday() const;
  std::string to_string() const;

  friend auto operator<=>(const LocalDateTime&, const LocalDateTime&) = default;

 private:
  std::int64_t seconds_ = 0;
};

enum class Gender { male, female, unknown };

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

struct UserRecord {
  std::string user_id;
  Gender gender = Gender::unknown;
  Date register_date;
  std::int64_t n_tweets = 0;
  std::int64_t n_followers = 0;
  std::int64_t n_followees = 0;
  bool allow_comments = false;
  bool allow_messages = false;
  bool allow_location = false;
  std::string description;
  std::set<std::string> badges;
  std::optional<double> extraversion_score;
};

struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  LocalDateTime timestamp;
  std::string text;
  std::string source;
  bool is_retweet = false;
  std::int64_t mention_count = 0;
  std::optional<GeoPoint> geotag;
};

using TweetGroups = std::map<std::string, std::vector<TweetRecord>>;

struct TweetLoad {
  TweetGroups groups;
  std::size_t orphans = 0;
  std::size_t total = 0;
};

/// Immutable after construction. Users are kept in file order; tweet lists
/// are ascending by (timestamp, tweet_id).
class Corpus {
 public:
  Corpus(Date snapshot, std::vector<UserRecord> users, TweetGroups tweets);

  const Date& snapshot_date() const noexcept { return snapshot_; }
  const std::vector<UserRecord>& users() const noexcept { return users_; }
  const TweetGroups& tweet_groups() const noexcept { return tweets_; }
  /// Tweets of one user; empty when the user has none.
  const std::vector<TweetRecord>& tweets_of(const std::string& user_id) const;
  const UserRecord* find_user(const std::string& user_id) const;
  std::size_t tweet_count() const;

 private:
  Date snapshot_;
  std::vector<UserRecord> users_;
  TweetGroups tweets_;
  std::map<std::string, std::size_t> index_;
};

/// When a snapshot is given, register_date must not be after it.
std::vector<UserRecord> load_users(const std::string& path,
                                   const std::optional<Date>& snapshot = std::nullopt);
TweetLoad load_tweets(const std::string& path, const std::set<std::string>& user_ids);

std::vector<UserRecord> parse_users(std::string_view content, const std::string& source_name,
                                    const std::optional<Date>& snapshot = std::nullopt);
TweetLoad parse_tweets(std::string_view content, const std::set<std::string>& user_ids,
                       const std::string& source_name);

/// Keeps users with strictly more than `min_tweets` loaded tweets.
Corpus filter_active(const Corpus& corpus, std::int64_t min_tweets);

std::string format_user(const UserRecord& user);
std::string format_tweet(const TweetRecord& tweet);

void sort_tweets(std::vector<TweetRecord>& tweets);

std::string_view gender_code(Gender g);

}  // namespace extrav
