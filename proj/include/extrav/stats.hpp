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

#include <span>
#include <vector>

namespace extrav::stats {

double mean(std::span<const double> x);
/// Divide-by-n variance.
double population_variance(std::span<const double> x);
/// Divide-by-(n-1) variance.
double sample_variance(std::span<const double> x);

/// Linear-interpolation quantile (type 7) of unsorted data, q in [0, 1].
double quantile(std::span<const double> x, double q);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;  ///< population
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> x);

/// Sample Pearson correlation. Needs equal lengths >= 2 and non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(F > f) for an F(d1, d2) variable.
double f_upper_tail(double f, double d1, double d2);
/// P(|T| >= |t|) for a Student t variable with df degrees of freedom.
double t_two_sided(double t, double df);

struct TestResult {
  double statistic = 0.0;
  double df1 = 0.0;
  /// Second degrees of freedom; 0 for single-df statistics.
  double df2 = 0.0;
  double p_value = 1.0;
};

/// Two-group one-way ANOVA: F = MSB / MSW with df (1, n - 2).
TestResult anova_oneway(std::span<const double> a, std::span<const double> b);

/// Welch's unequal-variance t-test, two-sided; df1 holds the Welch-Satterthwaite df.
TestResult welch_t(std::span<const double> a, std::span<const double> b);

/// Pooled-variance two-sample t-test, two-sided; df1 = n - 2.
TestResult pooled_t(std::span<const double> a, std::span<const double> b);

}  // namespace extrav::stats
