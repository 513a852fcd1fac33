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

#include <algorithm>

#include "extrav/corpus.hpp"
#include "extrav/error.hpp"
#include "extrav/random.hpp"
#include "support.hpp"

namespace extrav {
namespace {

using testing::make_tweet;
using testing::make_user;

std::string user_line(const std::string& id, std::int64_t n_tweets) {
  return R"({"user_id":")" + id + R"(","gender":"f","register_date":"2013-05-01","n_tweets":)" +
         std::to_string(n_tweets) +
         R"(,"n_followers":3,"n_followees":4,"allow_comments":true,"allow_messages":false,)"
         R"("allow_location":false,"description":"hi","badges":["Binding-Taobao"]})";
}

TEST(Dates, CivilRoundTrip) {
  for (std::int64_t d = -800000; d <= 800000; d += 997) {
    EXPECT_EQ(Date::from_days(d).days_since_epoch(), d);
  }
  EXPECT_EQ((Date{1970, 1, 1}.days_since_epoch()), 0);
  EXPECT_EQ((Date{2016, 3, 1}.days_since_epoch() - Date{2016, 2, 28}.days_since_epoch()), 2);
}

TEST(Dates, ParseRejectsImpossibleDays) {
  EXPECT_TRUE(Date::parse("2016-02-29"));
  EXPECT_FALSE(Date::parse("2015-02-29"));
  EXPECT_FALSE(Date::parse("2016-13-01"));
  EXPECT_FALSE(Date::parse("2016-1-01"));
  EXPECT_FALSE(LocalDateTime::parse("2016-01-01T24:00:00"));
}

TEST(Dates, WeekdayStartsMonday) {
  // 2016-03-28 was a Monday.
  EXPECT_EQ(LocalDateTime(Date{2016, 3, 28}, 12, 0).weekday(), 0);
  EXPECT_EQ(LocalDateTime(Date{2016, 4, 3}, 23, 59).weekday(), 6);
  EXPECT_EQ(LocalDateTime(Date{1969, 12, 31}, 0, 0).weekday(), 2);
}

TEST(LoadUsers, EmptyFileGivesEmptyCollection) {
  EXPECT_TRUE(parse_users("", "users.jsonl").empty());
}

TEST(LoadUsers, KeepsFileOrder) {
  const auto users = parse_users(user_line("b", 5) + "\n" + user_line("a", 7) + "\n", "users.jsonl");
  ASSERT_EQ(users.size(), 2u);
  EXPECT_EQ(users[0].user_id, "b");
  EXPECT_EQ(users[1].user_id, "a");
  EXPECT_EQ(users[1].n_tweets, 7);
  EXPECT_TRUE(users[0].badges.contains("Binding-Taobao"));
  EXPECT_FALSE(users[0].extraversion_score);
}

TEST(LoadUsers, NegativeCountNamesLineAndField) {
  try {
    parse_users(user_line("a", 1) + "\n" + user_line("b", -1) + "\n", "users.jsonl");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "n_tweets");
    EXPECT_EQ(e.source(), "users.jsonl");
  }
}

TEST(LoadUsers, RejectsUnknownKeysAndDuplicates) {
  auto line = user_line("a", 1);
  line.insert(line.size() - 1, R"(,"surprise":1)");
  EXPECT_THROW(parse_users(line, "u"), ParseError);
  EXPECT_THROW(parse_users(user_line("a", 1) + "\n" + user_line("a", 1), "u"), ParseError);
}

TEST(LoadUsers, RegisterAfterSnapshotIsRejected) {
  EXPECT_THROW(parse_users(user_line("a", 1), "u", Date{2013, 1, 1}), ParseError);
  EXPECT_NO_THROW(parse_users(user_line("a", 1), "u", Date{2016, 3, 31}));
}

TEST(LoadUsers, FormatParsesBack) {
  auto u = make_user("x", 12);
  u.description = "quote \" and 中文";
  u.badges = {"b1", "b2"};
  u.extraversion_score = 41.5;
  const auto back = parse_users(format_user(u), "u");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].description, u.description);
  EXPECT_EQ(back[0].badges, u.badges);
  EXPECT_EQ(back[0].extraversion_score, 41.5);
}

std::string tweets_of(const std::vector<TweetRecord>& ts) {
  std::string out;
  for (const auto& t : ts) out += format_tweet(t) + "\n";
  return out;
}

TEST(LoadTweets, EmptyFileGivesNoGroups) {
  const auto load = parse_tweets("", {"a"}, "t");
  EXPECT_TRUE(load.groups.empty());
  EXPECT_EQ(load.orphans, 0u);
}

TEST(LoadTweets, GroupsAreSortedAscending) {
  const auto load = parse_tweets(tweets_of({make_tweet("A", "2016-01-03T00:00:00"),
                                            make_tweet("A", "2016-01-01T00:00:00"),
                                            make_tweet("A", "2016-01-02T00:00:00")}),
                                 {"A"}, "t");
  const auto& g = load.groups.at("A");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end(),
                             [](const auto& x, const auto& y) { return x.timestamp < y.timestamp; }));
}

TEST(LoadTweets, OrphansAreCountedAndExcluded) {
  const auto load = parse_tweets(
      tweets_of({make_tweet("A", "2016-01-01T00:00:00"), make_tweet("Z", "2016-01-01T00:00:00")}), {"A"}, "t");
  EXPECT_EQ(load.orphans, 1u);
  EXPECT_EQ(load.total, 2u);
  EXPECT_FALSE(load.groups.contains("Z"));
}

TEST(LoadTweets, LatWithoutLonIsAnError) {
  const std::string line =
      R"({"tweet_id":"1","user_id":"A","timestamp":"2016-01-01T00:00:00","text":"x","source":"s",)"
      R"("is_retweet":false,"mention_count":0,"lat":30.0})";
  EXPECT_THROW(parse_tweets(line, {"A"}, "t"), ParseError);
}

Corpus corpus_with_counts(const std::vector<std::size_t>& counts) {
  std::vector<UserRecord> users;
  TweetGroups groups;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto id = "u" + std::to_string(i);
    users.push_back(make_user(id));
    for (std::size_t k = 0; k < counts[i]; ++k) {
      auto t = make_tweet(id, "2016-01-01T00:00:00");
      t.timestamp = LocalDateTime(t.timestamp.seconds() + static_cast<std::int64_t>(k) * 60);
      groups[id].push_back(t);
    }
  }
  return Corpus(Date{2016, 3, 31}, std::move(users), std::move(groups));
}

TEST(FilterActive, ThresholdIsStrict) {
  const auto c = corpus_with_counts({100, 101});
  const auto f = filter_active(c, 100);
  ASSERT_EQ(f.users().size(), 1u);
  EXPECT_EQ(f.users()[0].user_id, "u1");
}

TEST(FilterActive, ZeroKeepsUsersWithAnyTweet) {
  const auto f = filter_active(corpus_with_counts({0, 1, 3}), 0);
  ASSERT_EQ(f.users().size(), 2u);
  EXPECT_EQ(f.users()[0].user_id, "u1");
}

TEST(CorpusProperties, FilterIsIdempotentAndConservesRecords) {
  Rng rng(7);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<std::size_t> counts(1 + rng.below(8));
    for (auto& n : counts) n = rng.below(12);
    const auto k = static_cast<std::int64_t>(rng.below(10));
    const auto c = corpus_with_counts(counts);
    const auto once = filter_active(c, k);
    const auto twice = filter_active(once, k);
    ASSERT_EQ(once.users().size(), twice.users().size());
    ASSERT_EQ(once.tweet_count(), twice.tweet_count());
    for (const auto& u : once.users()) {
      ASSERT_GT(static_cast<std::int64_t>(once.tweets_of(u.user_id).size()), k);
    }

    // Conservation: loaded + orphans = total lines.
    std::vector<TweetRecord> all;
    for (const auto& [id, ts] : c.tweet_groups()) all.insert(all.end(), ts.begin(), ts.end());
    all.push_back(make_tweet("ghost", "2016-01-01T00:00:00"));
    rng.shuffle(all);
    std::set<std::string> ids;
    for (const auto& u : c.users()) ids.insert(u.user_id);
    const auto load = parse_tweets(tweets_of(all), ids, "t");
    std::size_t grouped = 0;
    for (const auto& [id, ts] : load.groups) {
      grouped += ts.size();
      ASSERT_TRUE(std::is_sorted(ts.begin(), ts.end(),
                                 [](const auto& x, const auto& y) { return x.timestamp < y.timestamp; }));
    }
    ASSERT_EQ(grouped + load.orphans, load.total);
    ASSERT_EQ(load.total, all.size());
  }
}

}  // namespace
}  // namespace extrav
