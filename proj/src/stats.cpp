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


#include "extrav/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extrav/error.hpp"

namespace extrav::stats {

namespace {

constexpr double kFpMin = 1e-300;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete_beta: continued fraction did not converge");
}

void require_pairable(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() < 2 || b.size() < 2) {
    throw DomainError(std::string(what) + ": each group needs at least 2 values");
  }
}

double sum_sq_dev(std::span<const double> x, double m) {
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s;
}

}  // namespace

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of empty data");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double population_variance(std::span<const double> x) {
  return sum_sq_dev(x, mean(x)) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("sample variance needs at least 2 values");
  return sum_sq_dev(x, mean(x)) / static_cast<double>(x.size() - 1);
}

double quantile(std::span<const double> x, double q) {
  if (x.empty()) throw DomainError("quantile of empty data");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double h = (static_cast<double>(s.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

Summary summarize(std::span<const double> x) {
  Summary s;
  s.n = x.size();
  if (x.empty()) return s;
  s.mean = mean(x);
  s.std_dev = std::sqrt(population_variance(x));
  s.min = *std::min_element(x.begin(), x.end());
  s.max = *std::max_element(x.begin(), x.end());
  s.q1 = quantile(x, 0.25);
  s.median = quantile(x, 0.5);
  s.q3 = quantile(x, 0.75);
  return s;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: length mismatch");
  if (x.size() < 2) throw DomainError("pearson: needs at least 2 pairs");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta: a and b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_upper_tail(double f, double d1, double d2) {
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  return std::clamp(incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f)), 0.0, 1.0);
}

double t_two_sided(double t, double df) {
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return std::clamp(incomplete_beta(df / 2.0, 0.5, df / (df + t * t)), 0.0, 1.0);
}

TestResult anova_oneway(std::span<const double> a, std::span<const double> b) {
  require_pairable(a, b, "anova_oneway");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double grand = (na * ma + nb * mb) / (na + nb);
  const double ssb = na * (ma - grand) * (ma - grand) + nb * (mb - grand) * (mb - grand);
  const double ssw = sum_sq_dev(a, ma) + sum_sq_dev(b, mb);
  const double df2 = na + nb - 2.0;
  if (!(ssw > 0.0)) throw DomainError("anova_oneway: zero within-group variance");
  const double f = ssb / (ssw / df2);
  return {f, 1.0, df2, f_upper_tail(f, 1.0, df2)};
}

TestResult welch_t(std::span<const double> a, std::span<const double> b) {
  require_pairable(a, b, "welch_t");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double va = sample_variance(a), vb = sample_variance(b);
  if (!(va > 0.0) || !(vb > 0.0)) throw DomainError("welch_t: a group has zero variance");
  const double sa = va / na, sb = vb / nb;
  const double t = (mean(a) - mean(b)) / std::sqrt(sa + sb);
  const double df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  return {t, df, 0.0, t_two_sided(t, df)};
}

TestResult pooled_t(std::span<const double> a, std::span<const double> b) {
  require_pairable(a, b, "pooled_t");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double df = na + nb - 2.0;
  const double sp2 = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / df;
  if (!(sp2 > 0.0)) throw DomainError("pooled_t: zero pooled variance");
  const double t = (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
  return {t, df, 0.0, t_two_sided(t, df)};
}

}  // namespace extrav::stats
