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

#include <map>

#include "extrav/analytics.hpp"
#include "extrav/assets.hpp"
#include "extrav/error.hpp"
#include "extrav/stats.hpp"
#include "extrav/synth.hpp"
#include "extrav/text.hpp"
#include "support.hpp"

namespace extrav::synth {
namespace {

TEST(LargestRemainder, Examples) {
  const std::vector<double> thirds{1, 1, 1};
  EXPECT_EQ(largest_remainder(thirds, 10), (std::vector<std::size_t>{4, 3, 3}));
  const std::vector<double> skew{0.7, 0.2, 0.1};
  EXPECT_EQ(largest_remainder(skew, 7), (std::vector<std::size_t>{5, 1, 1}));
  const std::vector<double> unnormalized{3, 1};
  EXPECT_EQ(largest_remainder(unnormalized, 4), (std::vector<std::size_t>{3, 1}));
}

TEST(CohortSpec, ValidationRejectsBadValues) {
  auto s = CohortSpec::reference_defaults();
  EXPECT_NO_THROW(s.validate());
  s.tweets_per_user = 1;
  EXPECT_THROW(s.validate(), DomainError);
  s = CohortSpec::reference_defaults();
  s.extrovert.period_shares = {0.5, 0.5, 0.5};
  EXPECT_THROW(s.validate(), DomainError);
  s = CohortSpec::reference_defaults();
  s.extrovert_terms.push_back(s.introvert_terms.front());
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(Generate, SameSeedSameBytes) {
  auto spec = CohortSpec::reference_defaults();
  spec.users_per_group = 20;
  spec.panel_users = 30;
  spec.tweets_per_user = 40;
  const auto a = testing::scratch_dir("synth_a"), b = testing::scratch_dir("synth_b");
  const auto ga = generate_cohort(spec, a.string());
  const auto gb = generate_cohort(spec, b.string());
  for (const auto& [x, y] : {std::pair{ga.users_path, gb.users_path}, {ga.tweets_path, gb.tweets_path},
                             {ga.truth_path, gb.truth_path}, {*ga.assets.poi, *gb.assets.poi}}) {
    EXPECT_EQ(text::read_file(x), text::read_file(y)) << x;
  }
  spec.seed += 1;
  const auto c = testing::scratch_dir("synth_c");
  EXPECT_NE(text::read_file(generate_cohort(spec, c.string()).tweets_path), text::read_file(ga.tweets_path));

  const auto truth = parse_truth(text::read_file(ga.truth_path));
  EXPECT_EQ(truth.size(), 70u);
  EXPECT_EQ(ga.user_count, 70u);
  EXPECT_EQ(ga.tweet_count, 70u * 40);
  const auto users = load_users(ga.users_path);
  EXPECT_EQ(users.size(), 70u);
}

struct ByGroup {
  std::map<std::string, std::vector<const UserRecord*>> users;
  std::map<std::string, std::vector<TweetRecord>> tweets;
};

ByGroup population(const SyntheticData& d) {
  ByGroup g;
  std::map<std::string, std::string> group_of;
  for (const auto& t : d.truth) {
    if (!t.scored) group_of[t.user_id] = t.group;
  }
  for (const auto& u : d.users) {
    if (group_of.contains(u.user_id)) g.users[group_of[u.user_id]].push_back(&u);
  }
  for (const auto& t : d.tweets) g.tweets[t.user_id].push_back(t);
  return g;
}

std::vector<double> per_user(const ByGroup& g, const std::string& group,
                             const std::function<double(const std::vector<TweetRecord>&)>& f) {
  std::vector<double> out;
  for (const auto* u : g.users.at(group)) out.push_back(f(g.tweets.at(u->user_id)));
  return out;
}

TEST(Synthesize, ReferenceDefaultPeriodMeans) {
  const auto d = synthesize(CohortSpec::reference_defaults());
  const auto g = population(d);
  const std::array<std::array<double, 3>, 2> target{{{0.085, 0.557, 0.358}, {0.087, 0.608, 0.305}}};
  for (int k = 0; k < 3; ++k) {
    const auto share = [k](const std::vector<TweetRecord>& ts) {
      return analytics::period_shares(ts)[static_cast<std::size_t>(k)];
    };
    EXPECT_NEAR(stats::mean(per_user(g, "extrovert", share)), target[0][static_cast<std::size_t>(k)], 0.03);
    EXPECT_NEAR(stats::mean(per_user(g, "introvert", share)), target[1][static_cast<std::size_t>(k)], 0.03);
  }
}

TEST(Synthesize, NullEffectsShowNoGroupDifferences) {
  auto spec = CohortSpec::null_effects();
  spec.users_per_group = 100;
  const auto d = synthesize(spec);
  const auto g = population(d);
  const auto kw = assets::default_buying_keywords();
  const analytics::LexiconEmotionClassifier clf(assets::default_emotion_lexicon());
  std::vector<std::pair<std::string, std::function<double(const std::vector<TweetRecord>&)>>> metrics;
  for (std::size_t k = 0; k < 3; ++k) {
    metrics.emplace_back("period" + std::to_string(k),
                         [k](const auto& ts) { return analytics::period_shares(ts)[k]; });
  }
  metrics.emplace_back("purchasing", [&](const auto& ts) { return analytics::purchasing_index(ts, kw); });
  metrics.emplace_back("interval", [](const auto& ts) { return analytics::interval_stats(ts).mean_hours; });
  for (std::size_t e = 0; e < 5; ++e) {
    metrics.emplace_back(std::string(analytics::emotion_name(analytics::kAllEmotions[e])),
                         [&, e](const auto& ts) { return analytics::emotion_indices(ts, clf).value()[e]; });
  }
  for (const auto& [name, f] : metrics) {
    const auto a = per_user(g, "extrovert", f), b = per_user(g, "introvert", f);
    ASSERT_EQ(a.size(), 100u);
    EXPECT_GT(stats::anova_oneway(a, b).p_value, 0.01) << name;
  }
}

}  // namespace
}  // namespace extrav::synth
