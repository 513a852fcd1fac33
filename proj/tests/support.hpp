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

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "extrav/corpus.hpp"

namespace extrav::testing {

inline UserRecord make_user(std::string id, std::int64_t n_tweets = 0) {
  UserRecord u;
  u.user_id = std::move(id);
  u.register_date = Date{2012, 1, 1};
  u.n_tweets = n_tweets;
  return u;
}

/// `when` is "YYYY-MM-DDThh:mm:ss".
inline TweetRecord make_tweet(std::string user, const std::string& when, std::string text = "hello") {
  TweetRecord t;
  static int counter = 0;
  t.tweet_id = "t" + std::to_string(++counter);
  t.user_id = std::move(user);
  t.timestamp = *LocalDateTime::parse(when);
  t.text = std::move(text);
  t.source = "Weibo Web";
  return t;
}

inline TweetRecord at(Date day, int hour, int minute = 0, std::string user = "a") {
  auto t = make_tweet(std::move(user), "2016-01-01T00:00:00");
  t.timestamp = LocalDateTime(day, hour, minute);
  return t;
}

/// Fresh, empty scratch directory under the system temp dir, private to this process.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("extrav_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace extrav::testing
