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
#include <numbers>

#include "extrav/error.hpp"
#include "extrav/random.hpp"
#include "extrav/stats.hpp"

namespace extrav::stats {
namespace {

using V = std::vector<double>;

TEST(Descriptive, MeanVarianceQuantiles) {
  const V x{1, 2, 3, 4};
  EXPECT_EQ(mean(x), 2.5);
  EXPECT_EQ(population_variance(x), 1.25);
  EXPECT_NEAR(sample_variance(x), 5.0 / 3.0, 1e-15);
  EXPECT_EQ(quantile(x, 0.25), 1.75);
  EXPECT_EQ(quantile(x, 0.5), 2.5);
  EXPECT_EQ(quantile(x, 1.0), 4.0);
  const auto s = summarize(V{4, 1, 3, 2});
  EXPECT_EQ(s.n, 4u);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.q3, 3.25);
  EXPECT_EQ(s.max, 4.0);
  EXPECT_THROW(mean(V{}), DomainError);
}

TEST(IncompleteBeta, ClosedForms) {
  Rng rng(41);
  for (int iter = 0; iter < 1000; ++iter) {
    const double x = rng.uniform(0.001, 0.999);
    const double a = rng.uniform(0.2, 30), b = rng.uniform(0.2, 30);
    ASSERT_NEAR(incomplete_beta(1, 1, x), x, 1e-12);
    ASSERT_NEAR(incomplete_beta(a, 1, x), std::pow(x, a), 1e-10);
    ASSERT_NEAR(incomplete_beta(1, b, x), 1 - std::pow(1 - x, b), 1e-10);
    ASSERT_NEAR(incomplete_beta(a, a, 0.5), 0.5, 1e-10);
    ASSERT_NEAR(incomplete_beta(a, b, x), 1 - incomplete_beta(b, a, 1 - x), 1e-10);
  }
  EXPECT_EQ(incomplete_beta(2, 3, 0), 0.0);
  EXPECT_EQ(incomplete_beta(2, 3, 1), 1.0);
  // I_x(1/2, 1/2) = (2/pi) asin(sqrt x).
  EXPECT_NEAR(incomplete_beta(0.5, 0.5, 0.1), 2 / std::numbers::pi * std::asin(std::sqrt(0.1)), 1e-12);
}

TEST(IncompleteBeta, FrozenReferenceValues) {
  // Reference values from an independent regularized incomplete beta implementation.
  struct Case {
    double a, b, x, want;
  };
  for (const auto& c : {Case{2.5, 3.5, 0.3, 0.29675298929566646}, Case{10, 20, 0.4, 0.7853183897628262},
                        Case{100, 150, 0.41, 0.6293656652930681}, Case{0.7, 12.0, 0.02, 0.36756958533784073},
                        Case{3623.5, 0.5, 0.999, 0.007089604821158505}}) {
    EXPECT_NEAR(incomplete_beta(c.a, c.b, c.x), c.want, 1e-11 * std::max(1.0, 1 / c.want))
        << c.a << " " << c.b << " " << c.x;
  }
}

TEST(Tails, FrozenReferenceValues) {
  EXPECT_NEAR(f_upper_tail(1.5, 1, 4), 0.2878641347266907, 1e-12);
  EXPECT_NEAR(f_upper_tail(3.2, 3, 17), 0.049858015044896606, 1e-12);
  EXPECT_NEAR(f_upper_tail(14.497, 1, 7247), 1.415413025001033e-4, 1e-13);
  EXPECT_NEAR(t_two_sided(2.1, 7.5), 0.07123707145807805, 1e-12);
  EXPECT_NEAR(t_two_sided(0.3, 30), 0.7662461052843528, 1e-12);
  EXPECT_NEAR(t_two_sided(5.0, 120), 1.9781905804539636e-06, 1e-15);
}

TEST(Tails, ClosedFormTDistributions) {
  Rng rng(42);
  for (int iter = 0; iter < 1000; ++iter) {
    const double t = rng.uniform(-20, 20);
    // df = 1 is Cauchy; df = 2 has an algebraic CDF.
    ASSERT_NEAR(t_two_sided(t, 1), 1 - 2 / std::numbers::pi * std::atan(std::abs(t)), 1e-12);
    ASSERT_NEAR(t_two_sided(t, 2), 1 - std::abs(t) / std::sqrt(2 + t * t), 1e-12);
  }
}

TEST(Pearson, Examples) {
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{6, 4, 2}), -1.0, 1e-15);
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{1, 2, 4}), 3 / std::sqrt(2.0 * 42 / 9), 1e-12);
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{1, 2, 4}), 0.9820, 5e-5);
  EXPECT_THROW(pearson(V{1, 1, 1}, V{1, 2, 3}), DomainError);
  EXPECT_THROW(pearson(V{1, 2}, V{1, 2, 3}), DomainError);
}

TEST(Pearson, AffineInvarianceAndSignFlip) {
  Rng rng(43);
  for (int iter = 0; iter < 1000; ++iter) {
    V x(3 + rng.below(30)), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.normal();
      y[i] = x[i] * rng.uniform(-1, 1) + rng.normal();
    }
    const double r = pearson(x, y);
    const double a = rng.uniform(0.1, 10), b = rng.uniform(-5, 5);
    V ax, ny;
    for (double v : x) ax.push_back(a * v + b);
    for (double v : y) ny.push_back(-v);
    ASSERT_NEAR(pearson(ax, y), r, 1e-9);
    ASSERT_NEAR(pearson(x, ny), -r, 1e-12);
    ASSERT_LE(std::abs(r), 1.0);
  }
}

TEST(Anova, HandEvaluatedFixture) {
  const auto r = anova_oneway(V{1, 2, 3}, V{2, 3, 4});
  EXPECT_EQ(r.statistic, 1.5);
  EXPECT_EQ(r.df1, 1.0);
  EXPECT_EQ(r.df2, 4.0);
  EXPECT_NEAR(r.p_value, 0.2878641347266907, 1e-12);
  const auto same = anova_oneway(V{1, 2, 3}, V{1, 2, 3});
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
}

TEST(Anova, EqualsSquaredPooledT) {
  Rng rng(44);
  for (int iter = 0; iter < 1000; ++iter) {
    V a(2 + rng.below(8)), b(2 + rng.below(8));
    for (auto& v : a) v = rng.normal(0, 1);
    for (auto& v : b) v = rng.normal(rng.uniform(-1, 1), rng.uniform(0.5, 2));
    const auto f = anova_oneway(a, b);
    const auto t = pooled_t(a, b);
    ASSERT_NEAR(f.statistic, t.statistic * t.statistic, 1e-9 * std::max(1.0, f.statistic));
    ASSERT_NEAR(f.p_value, t.p_value, 1e-9);
    ASSERT_EQ(f.df2, static_cast<double>(a.size() + b.size() - 2));
  }
}

TEST(Welch, Examples) {
  const auto same = welch_t(V{1, 2, 4}, V{1, 2, 4});
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  const auto r = welch_t(V{0, 0, 0, 1}, V{10, 10, 10, 11});
  EXPECT_NEAR(r.statistic, -28.2842712474619, 1e-9);
  EXPECT_NEAR(r.df1, 6.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.2927505965951296e-07, 1e-15);
  EXPECT_LT(r.p_value, 1e-3);
  EXPECT_THROW(welch_t(V{1, 1}, V{2, 2}), DomainError);
}

TEST(PValues, RangeAndMonotonicity) {
  Rng rng(45);
  for (int iter = 0; iter < 1000; ++iter) {
    const double df = rng.uniform(1, 500);
    const double s1 = rng.uniform(0, 10), s2 = rng.uniform(0, 10);
    const double pt1 = t_two_sided(s1, df), pt2 = t_two_sided(s2, df);
    ASSERT_GE(pt1, 0.0);
    ASSERT_LE(pt1, 1.0);
    if (s1 < s2) {
      ASSERT_GE(pt1, pt2);
    }
    const double d1 = std::floor(rng.uniform(1, 6));
    const double f1 = s1 * s1, f2 = s2 * s2;
    const double pf1 = f_upper_tail(f1, d1, df), pf2 = f_upper_tail(f2, d1, df);
    ASSERT_GE(pf1, 0.0);
    ASSERT_LE(pf1, 1.0);
    if (f1 < f2) {
      ASSERT_GE(pf1, pf2);
    }
  }
}

}  // namespace
}  // namespace extrav::stats
