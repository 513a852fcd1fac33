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
#include <cmath>
#include <set>

#include "extrav/error.hpp"
#include "extrav/features.hpp"
#include "extrav/random.hpp"
#include "support.hpp"

namespace extrav {
namespace {

using testing::at;
using testing::make_user;

double value_of(const NamedValues& v, std::string_view name) {
  for (const auto& nv : v) {
    if (nv.name == name) return nv.value;
  }
  ADD_FAILURE() << "no feature named " << name;
  return NAN;
}

TEST(ExtractBasic, HandEvaluatedFormulas) {
  auto u = make_user("a", 99);
  u.register_date = Date{2016, 1, 1};
  u.n_followers = 9;
  u.n_followees = 4;
  const Date snapshot = Date::from_days(u.register_date.days_since_epoch() + 99);
  const auto v = extract_basic(u, 50, snapshot);
  EXPECT_NEAR(value_of(v, "log_tweets"), 4.6052, 5e-5);
  EXPECT_NEAR(value_of(v, "log_tweet_frequency"), -0.01005, 5e-6);
  EXPECT_NEAR(value_of(v, "log_followers"), 2.3026, 5e-5);
  EXPECT_DOUBLE_EQ(value_of(v, "tweets_per_follower"), 9.9);
  EXPECT_DOUBLE_EQ(value_of(v, "tweets_per_followee"), 19.8);
}

TEST(ExtractBasic, EmptyDescriptionAndClosedPrivacy) {
  const auto v = extract_basic(make_user("a", 10), 10, Date{2016, 3, 31});
  EXPECT_EQ(value_of(v, "description_length"), 0.0);
  EXPECT_EQ(value_of(v, "allow_comments"), 0.0);
  EXPECT_EQ(value_of(v, "allow_messages"), 0.0);
  EXPECT_EQ(value_of(v, "allow_location"), 0.0);
}

TEST(ExtractBasic, ObservedCountWinsWhenLarger) {
  const auto v = extract_basic(make_user("a", 3), 99, Date{2016, 3, 31});
  EXPECT_NEAR(value_of(v, "log_tweets"), std::log(100.0), 1e-12);
}

TEST(InteractionProfile, NoTweetsGivesZeroBins) {
  const auto p = interaction_profile({}, InteractionKind::posting, Granularity::hour_of_day, 3);
  ASSERT_EQ(p.bins.size(), 24u);
  for (double b : p.bins) EXPECT_EQ(b, 0.0);
}

TEST(InteractionProfile, HourlyRatePerDay) {
  std::vector<TweetRecord> ts;
  for (int i = 0; i < 10; ++i) ts.push_back(at(Date{2016, 1, 1 + i % 5}, 9, i));
  const auto p = interaction_profile(ts, InteractionKind::posting, Granularity::hour_of_day, 5);
  for (std::size_t h = 0; h < 24; ++h) EXPECT_DOUBLE_EQ(p.bins[h], h == 9 ? 2.0 : 0.0);
}

TEST(InteractionProfile, WeekdayRatePerWeek) {
  std::vector<TweetRecord> ts;
  for (int d = 0; d < 7; ++d) ts.push_back(at(Date{2016, 3, 28 + d > 31 ? 28 + d - 31 : 28 + d}, 12));
  for (int d = 0; d < 7; ++d) {
    if (28 + d > 31) ts[static_cast<std::size_t>(d)].timestamp = LocalDateTime(Date{2016, 4, 28 + d - 31}, 12, 0);
  }
  const auto p = interaction_profile(ts, InteractionKind::posting, Granularity::day_of_week, 7);
  ASSERT_EQ(p.bins.size(), 7u);
  for (double b : p.bins) EXPECT_DOUBLE_EQ(b, 1.0);
}

TEST(SummarizeProfile, Examples) {
  InteractionProfile zero{InteractionKind::posting, Granularity::hour_of_day, std::vector<double>(24, 0.0)};
  const auto z = summarize_profile(zero);
  EXPECT_EQ(z.mean, 0.0);
  EXPECT_EQ(z.peak_index, 0);
  EXPECT_EQ(z.peak_value, 0.0);
  EXPECT_EQ(z.low_index, 0);
  EXPECT_EQ(z.variance, 0.0);

  auto p = zero;
  p.bins[9] = 2.0;
  p.bins[21] = 1.0;
  const auto s = summarize_profile(p);
  EXPECT_DOUBLE_EQ(s.mean, 0.125);
  EXPECT_EQ(s.peak_index, 9);
  EXPECT_EQ(s.peak_value, 2.0);
  EXPECT_EQ(s.low_index, 0);
  EXPECT_NEAR(s.variance, 0.19271, 5e-6);

  auto u = zero;
  std::fill(u.bins.begin(), u.bins.end(), 0.75);
  EXPECT_EQ(summarize_profile(u).variance, 0.0);
  EXPECT_EQ(summarize_profile(u).mean, 0.75);
}

TEST(InteractionRates, Examples) {
  std::vector<TweetRecord> ts(4, at(Date{2016, 1, 1}, 10));
  ts[0].mention_count = 1;
  ts[1].mention_count = 3;
  ts[2].is_retweet = true;
  const auto r = interaction_rates(ts);
  EXPECT_EQ(r.mention_rate, 0.5);
  EXPECT_EQ(r.retweet_rate, 0.25);
  for (auto& t : ts) {
    t.mention_count = 0;
    t.is_retweet = false;
  }
  EXPECT_EQ(interaction_rates(ts).mention_rate, 0.0);
  EXPECT_EQ(interaction_rates(ts).retweet_rate, 0.0);
  for (auto& t : ts) t.is_retweet = true;
  EXPECT_EQ(interaction_rates(ts).retweet_rate, 1.0);
}

TEST(BuildUserDocument, JoinsLowercasesAndStripsUrls) {
  const std::vector<std::string> texts{"Hello", "world"};
  EXPECT_EQ(build_user_document(texts), "hello world");
  EXPECT_EQ(clean_tweet_text("http://t.cn/RqZ9x"), "");
  EXPECT_EQ(clean_tweet_text("今天 Happy 开朗"), "今天 happy 开朗");
}

TEST(SelectTerms, HandEvaluatedIdf) {
  const std::vector<std::string> docs{"party party party book", "book"};
  const TermLexicon lex({"book", "party"});
  const auto scores = score_terms(docs, lex);
  const auto find = [&](const std::string& t) {
    return *std::find_if(scores.begin(), scores.end(), [&](const TermScore& s) { return s.term == t; });
  };
  EXPECT_DOUBLE_EQ(find("party").score, 0.0);
  EXPECT_NEAR(find("book").score, 2.0 * std::log(2.0 / 3.0), 1e-12);
  const auto sel = select_terms(docs, lex, 2);
  EXPECT_EQ(sel, (std::vector<std::string>{"party", "book"}));
}

TEST(SelectTerms, UnseenTermsRankLast) {
  const std::vector<std::string> docs{"alpha beta", "beta"};
  const TermLexicon lex({"zzz", "beta", "alpha"});
  const auto sel = select_terms(docs, lex, 3);
  EXPECT_EQ(sel.back(), "zzz");
}

TEST(SelectTerms, WholeLexiconIsAPermutation) {
  const std::vector<std::string> docs{"a b c", "c d"};
  const TermLexicon lex({"a", "b", "c", "d", "e"});
  auto sel = select_terms(docs, lex, 5);
  std::sort(sel.begin(), sel.end());
  EXPECT_EQ(sel, lex.terms());
}

TEST(ExtractLinguistic, PresenceAndAverageLength) {
  std::vector<TweetRecord> ts(2, at(Date{2016, 1, 1}, 10));
  ts[0].text = std::string(10, 'x');
  ts[1].text = std::string(20, 'y');
  const std::vector<std::string> sel{"开朗", "quiet"};
  const auto v = extract_linguistic("我很开朗", sel, ts);
  EXPECT_EQ(value_of(v, "term:开朗"), 1.0);
  EXPECT_EQ(value_of(v, "term:quiet"), 0.0);
  EXPECT_EQ(value_of(v, "avg_tweet_length"), 15.0);
  for (const auto& nv : extract_linguistic("nothing here", sel, ts)) {
    if (nv.name.starts_with("term:")) {
      EXPECT_EQ(nv.value, 0.0);
    }
  }
}

TEST(Standardize, Examples) {
  const Matrix m{{2, 7}, {4, 7}, {10, 7}};
  const auto s = standardize(m);
  EXPECT_EQ(s.matrix[0][0], 0.0);
  EXPECT_EQ(s.matrix[1][0], 0.25);
  EXPECT_EQ(s.matrix[2][0], 1.0);
  for (const auto& r : s.matrix) EXPECT_EQ(r[1], 0.0);
  const auto again = standardize(s.matrix);
  EXPECT_EQ(again.matrix, s.matrix);
  EXPECT_EQ(again.scaler.transform(s.matrix), s.matrix);
}

TEST(Standardize, OutOfRangeValuesAreClipped) {
  const auto s = standardize(Matrix{{0.0}, {1.0}});
  const std::vector<double> row{5.0};
  EXPECT_EQ(s.scaler.transform(row)[0], 1.0);
  const std::vector<double> low{-5.0};
  EXPECT_EQ(s.scaler.transform(low)[0], 0.0);
}

TEST(Registry, DefaultLayout) {
  std::vector<std::string> terms;
  for (int i = 0; i < 84; ++i) terms.push_back("t" + std::to_string(i));
  const auto r = FeatureRegistry::default_registry(terms);
  EXPECT_EQ(r.size(), 130u);
  std::array<int, 3> fam{};
  for (const auto& e : r.entries()) ++fam[static_cast<std::size_t>(e.family)];
  EXPECT_EQ(fam[0], 13);
  EXPECT_EQ(fam[1], 32);
  EXPECT_EQ(fam[2], 85);
  const auto back = FeatureRegistry::parse(r.serialize());
  EXPECT_EQ(back.names(), r.names());
  EXPECT_EQ(back.fingerprint(), r.fingerprint());
  const auto other = FeatureRegistry::default_registry(std::vector<std::string>(terms.rbegin(), terms.rend()));
  EXPECT_NE(other.fingerprint(), r.fingerprint());
}

std::vector<TweetRecord> user_tweets(Rng& rng, std::size_t n) {
  static const std::vector<std::string> words{"happy", "party", "book", "quiet", "开朗", "friends", "home"};
  std::vector<TweetRecord> ts;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = at(Date::from_days(16800 + static_cast<std::int64_t>(rng.below(60))), static_cast<int>(rng.below(24)),
                static_cast<int>(rng.below(60)));
    t.text = words[rng.below(words.size())] + " " + words[rng.below(words.size())];
    t.mention_count = static_cast<std::int64_t>(rng.below(3)) - 1 > 0 ? 1 : 0;
    t.is_retweet = rng.bernoulli(0.3);
    ts.push_back(t);
  }
  sort_tweets(ts);
  return ts;
}

TEST(Assemble, DeterministicAndRegistrySized) {
  Rng rng(3);
  const auto ts = user_tweets(rng, 40);
  const std::vector<std::string> sel{"party", "book"};
  const auto reg = FeatureRegistry::default_registry(sel);
  const auto u = make_user("a", 40);
  const auto v1 = assemble(u, ts, reg, sel, Date{2016, 3, 31});
  const auto v2 = assemble(u, ts, reg, sel, Date{2016, 3, 31});
  EXPECT_EQ(v1.values, v2.values);
  EXPECT_EQ(v1.values.size(), reg.size());
  EXPECT_EQ(v1.registry_fingerprint, reg.fingerprint());
}

TEST(Assemble, NoMentionsGivesZeroMentionFeatures) {
  Rng rng(4);
  auto ts = user_tweets(rng, 30);
  for (auto& t : ts) t.mention_count = 0;
  const std::vector<std::string> sel{"party"};
  const auto reg = FeatureRegistry::default_registry(sel);
  const auto v = assemble(make_user("a", 30), ts, reg, sel, Date{2016, 3, 31});
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& name = reg.entries()[i].name;
    if (name.starts_with("mentioning_") || name == "mention_rate") {
      EXPECT_EQ(v.values[i], 0.0) << name;
    }
  }
}

TEST(FeatureTable, FormatParsesBack) {
  FeatureTable t{{"f1", "f2"}, {"a", "b"}, {{0.1, 1.0 / 3.0}, {1e-300, -2.5}}};
  const auto back = parse_feature_table(format_feature_table(t, "# seed=1 input=ab\n"));
  EXPECT_EQ(back.names, t.names);
  EXPECT_EQ(back.user_ids, t.user_ids);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(FeatureProperties, StandardizedMatrixBounds) {
  Rng rng(21);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto rows = 1 + rng.below(12), cols = 1 + rng.below(6);
    Matrix m(rows, std::vector<double>(cols));
    for (auto& r : m) {
      for (std::size_t j = 0; j < cols; ++j) {
        // Every third column is constant to exercise the degenerate rule.
        r[j] = j % 3 == 2 ? 4.0 : rng.normal(0.0, std::pow(10.0, rng.uniform(-3, 3)));
      }
    }
    const auto s = standardize(m);
    for (std::size_t j = 0; j < cols; ++j) {
      double lo = m[0][j], hi = m[0][j];
      for (const auto& r : m) {
        lo = std::min(lo, r[j]);
        hi = std::max(hi, r[j]);
      }
      double slo = 1.0, shi = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        const double v = s.matrix[i][j];
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
        if (m[i][j] == lo) {
          ASSERT_EQ(v, 0.0);
        }
        if (m[i][j] == hi && hi != lo) {
          ASSERT_EQ(v, 1.0);
        }
        slo = std::min(slo, v);
        shi = std::max(shi, v);
      }
      if (hi == lo) {
        ASSERT_EQ(shi, 0.0);
      } else {
        ASSERT_EQ(slo, 0.0);
        ASSERT_EQ(shi, 1.0);
      }
    }
  }
}

TEST(FeatureProperties, ProfilesIgnoreTweetOrder) {
  Rng rng(22);
  for (int iter = 0; iter < 1000; ++iter) {
    auto ts = user_tweets(rng, 1 + rng.below(30));
    const auto kind = static_cast<InteractionKind>(rng.below(3));
    const auto gran = static_cast<Granularity>(rng.below(2));
    const auto days = 1 + static_cast<std::int64_t>(rng.below(90));
    const auto a = interaction_profile(ts, kind, gran, days);
    rng.shuffle(ts);
    const auto b = interaction_profile(ts, kind, gran, days);
    ASSERT_EQ(a.bins, b.bins);
    const auto s = summarize_profile(a);
    ASSERT_GE(s.variance, 0.0);
    const bool flat = std::all_of(a.bins.begin(), a.bins.end(), [&](double v) { return v == a.bins[0]; });
    ASSERT_EQ(s.variance == 0.0, flat);
  }
}

TEST(FeatureProperties, SelectTermsSubsetSizeAndStable) {
  Rng rng(23);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<std::string> docs(1 + rng.below(6));
    for (auto& d : docs) {
      for (std::size_t w = rng.below(8); w > 0; --w) d += vocab[rng.below(vocab.size())] + " ";
    }
    std::vector<std::string> lex_terms(vocab.begin(), vocab.begin() + 2 + static_cast<long>(rng.below(8)));
    const TermLexicon lex(lex_terms);
    const auto k = rng.below(lex.size() + 1);
    const auto a = select_terms(docs, lex, k);
    ASSERT_EQ(a.size(), k);
    ASSERT_EQ(std::set<std::string>(a.begin(), a.end()).size(), k);
    for (const auto& t : a) ASSERT_NE(std::find(lex_terms.begin(), lex_terms.end(), t), lex_terms.end());
    ASSERT_EQ(select_terms(docs, lex, k), a);
  }
}

TEST(FeatureProperties, PresenceIsMonotoneUnderAppend) {
  Rng rng(24);
  const std::vector<std::string> sel{"ab", "开朗", "xyz", "b c"};
  const std::vector<std::string> pieces{"a", "b", "c", " ", "开", "朗", "x", "y", "z"};
  for (int iter = 0; iter < 1000; ++iter) {
    std::string doc, tail;
    for (std::size_t n = rng.below(10); n > 0; --n) doc += pieces[rng.below(pieces.size())];
    for (std::size_t n = rng.below(10); n > 0; --n) tail += pieces[rng.below(pieces.size())];
    const auto before = extract_linguistic(doc, sel, {});
    const auto after = extract_linguistic(doc + tail, sel, {});
    for (std::size_t i = 0; i < sel.size(); ++i) ASSERT_LE(before[i].value, after[i].value);
  }
}

}  // namespace
}  // namespace extrav
