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

#include <cmath>

#include "extrav/error.hpp"
#include "extrav/labeling.hpp"
#include "extrav/random.hpp"

namespace extrav {
namespace {

TEST(ScoreModel, MeanAndPopulationSigma) {
  const std::vector<double> s{30, 40, 50};
  const auto m = fit_score_model(s);
  EXPECT_DOUBLE_EQ(m.mu(), 40.0);
  EXPECT_NEAR(m.sigma(), std::sqrt(200.0 / 3.0), 1e-12);
  EXPECT_NEAR(m.sigma(), 8.1650, 5e-5);
}

TEST(ScoreModel, ZeroVarianceIsAnError) {
  const std::vector<double> s{5, 5, 5};
  EXPECT_THROW(fit_score_model(s), DomainError);
}

TEST(ScoreModel, PublishedThresholds) {
  const auto m = ScoreModel::from_moments(39.03, 7.55);
  EXPECT_EQ(std::llround(m.upper() * 1000), 42805);
  EXPECT_EQ(std::llround(m.lower() * 1000), 35255);
}

TEST(LabelScore, Examples) {
  const auto m = ScoreModel::from_moments(39.03, 7.55);
  EXPECT_EQ(label_score(50, m), Label::extrovert);
  EXPECT_EQ(label_score(42.805, m), Label::neutral);
  EXPECT_EQ(label_score(35.255, m), Label::neutral);
  EXPECT_EQ(label_score(30, m), Label::introvert);
}

TEST(LabelScore, IntegerRoundTrip) {
  for (auto l : kAllLabels) EXPECT_EQ(label_from_int(to_int(l)), l);
  EXPECT_THROW(label_from_int(2), Error);
}

TEST(LabelProperties, MonotoneInScore) {
  Rng rng(11);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto m = ScoreModel::from_moments(rng.uniform(10, 50), rng.uniform(0.5, 10));
    const double a = rng.uniform(0, 60), b = rng.uniform(0, 60);
    const double lo = std::min(a, b), hi = std::max(a, b);
    ASSERT_LE(to_int(label_score(lo, m)), to_int(label_score(hi, m)));
  }
}

TEST(LabelProperties, ShiftEquivariance) {
  Rng rng(12);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<double> s(3 + rng.below(30));
    // Dyadic values keep the shift exact, so labels cannot flip on rounding.
    for (auto& v : s) v = static_cast<double>(rng.below(240)) / 4.0;
    if (std::all_of(s.begin(), s.end(), [&](double v) { return v == s[0]; })) continue;
    const double c = static_cast<double>(rng.below(64)) / 8.0 - 4.0;
    std::vector<double> shifted;
    for (double v : s) shifted.push_back(v + c);
    const auto m = fit_score_model(s);
    const auto ms = fit_score_model(shifted);
    ASSERT_NEAR(ms.mu(), m.mu() + c, 1e-9);
    ASSERT_NEAR(ms.sigma(), m.sigma(), 1e-9);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_EQ(label_score(s[i], m), label_score(shifted[i], ms)) << "score " << s[i] << " shift " << c;
    }
  }
}

}  // namespace
}  // namespace extrav
