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


// C-SVM with RBF kernel. Each class pair is solved by SMO with second-order
// working-set selection; prediction is one-vs-one majority voting.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "extrav/error.hpp"
#include "extrav/models.hpp"

namespace extrav::detail {

namespace {

constexpr double kTau = 1e-12;

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

struct BinaryProblem {
  std::vector<const std::vector<double>*> x;
  std::vector<double> y;  // +1 / -1
};

struct Solution {
  std::vector<double> alpha;
  double rho = 0.0;
};

// Dual: min 0.5 a'Qa - e'a, 0 <= a <= C, y'a = 0, with Q_ij = y_i y_j K_ij.
Solution solve_smo(const BinaryProblem& p, double c, double gamma, double eps,
                   std::int64_t max_iter) {
  const std::size_t n = p.y.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    k[i][i] = 1.0;
    for (std::size_t j = 0; j < i; ++j) k[i][j] = k[j][i] = rbf(*p.x[i], *p.x[j], gamma);
  }
  const auto& y = p.y;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);

  auto is_upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto is_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  for (std::int64_t iter = 0; iter < max_iter; ++iter) {
    // i: maximal violating index in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] > 0 ? !is_upper(t) : !is_lower(t)) {
        const double v = -y[t] * grad[t];
        if (v >= gmax) {
          gmax = v;
          i = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (i < 0) break;
    const auto ui = static_cast<std::size_t>(i);

    // j: second-order choice in I_low.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::ptrdiff_t j = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] > 0 ? is_lower(t) : is_upper(t)) continue;
      const double ygrad = y[t] * grad[t];
      gmax2 = std::max(gmax2, ygrad);
      const double diff = gmax + ygrad;
      if (diff > 0.0) {
        double quad = k[ui][ui] + k[t][t] - 2.0 * k[ui][t];
        if (quad <= 0.0) quad = kTau;
        const double obj = -(diff * diff) / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmax2 < eps || j < 0) break;
    const auto uj = static_cast<std::size_t>(j);

    const double old_ai = alpha[ui];
    const double old_aj = alpha[uj];
    const double qij = y[ui] * y[uj] * k[ui][uj];
    if (y[ui] != y[uj]) {
      double quad = k[ui][ui] + k[uj][uj] + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[ui] - grad[uj]) / quad;
      const double diff = alpha[ui] - alpha[uj];
      alpha[ui] += delta;
      alpha[uj] += delta;
      if (diff > 0.0) {
        if (alpha[uj] < 0.0) {
          alpha[uj] = 0.0;
          alpha[ui] = diff;
        }
      } else if (alpha[ui] < 0.0) {
        alpha[ui] = 0.0;
        alpha[uj] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[ui] > c) {
          alpha[ui] = c;
          alpha[uj] = c - diff;
        }
      } else if (alpha[uj] > c) {
        alpha[uj] = c;
        alpha[ui] = c + diff;
      }
    } else {
      double quad = k[ui][ui] + k[uj][uj] - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[ui] - grad[uj]) / quad;
      const double sum = alpha[ui] + alpha[uj];
      alpha[ui] -= delta;
      alpha[uj] += delta;
      if (sum > c) {
        if (alpha[ui] > c) {
          alpha[ui] = c;
          alpha[uj] = sum - c;
        }
      } else if (alpha[uj] < 0.0) {
        alpha[uj] = 0.0;
        alpha[ui] = sum;
      }
      if (sum > c) {
        if (alpha[uj] > c) {
          alpha[uj] = c;
          alpha[ui] = sum - c;
        }
      } else if (alpha[ui] < 0.0) {
        alpha[ui] = 0.0;
        alpha[uj] = sum;
      }
    }

    const double dai = alpha[ui] - old_ai;
    const double daj = alpha[uj] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[ui] * k[t][ui] * dai + y[uj] * k[t][uj] * daj);
    }
  }

  // Bias from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (is_lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  Solution s;
  s.alpha = std::move(alpha);
  s.rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;
  return s;
}

double decision(const BinarySvm& m, std::span<const double> x, double gamma) {
  double f = -m.rho;
  for (std::size_t i = 0; i < m.coef.size(); ++i) f += m.coef[i] * rbf(m.support[i], x, gamma);
  return f;
}

}  // namespace

SvmState train_svm(std::span<const LabeledSample> samples, const Hyperparameters& hp) {
  const std::size_t d = samples.front().features.size();
  SvmState state;
  state.gamma = hp.svm_gamma > 0.0 ? hp.svm_gamma : 1.0 / static_cast<double>(std::max<std::size_t>(d, 1));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      const Label pos = kAllLabels[a];
      const Label neg = kAllLabels[b];
      BinaryProblem p;
      for (const auto& s : samples) {
        if (s.label == pos || s.label == neg) {
          p.x.push_back(&s.features);
          p.y.push_back(s.label == pos ? 1.0 : -1.0);
        }
      }
      const auto sol = solve_smo(p, hp.svm_c, state.gamma, hp.svm_tolerance, hp.svm_max_iterations);
      BinarySvm m{pos, neg, {}, {}, sol.rho};
      for (std::size_t i = 0; i < sol.alpha.size(); ++i) {
        if (sol.alpha[i] > 0.0) {
          m.coef.push_back(sol.alpha[i] * p.y[i]);
          m.support.push_back(*p.x[i]);
        }
      }
      state.machines.push_back(std::move(m));
    }
  }
  return state;
}

Label predict_svm(const SvmState& s, std::span<const double> x) {
  std::array<int, 3> votes{};
  for (const auto& m : s.machines) {
    const Label winner = decision(m, x, s.gamma) > 0.0 ? m.positive : m.negative;
    ++votes[static_cast<std::size_t>(label_index(winner))];
  }
  // Ties go to the first label in {introvert, neutral, extrovert} order.
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (votes[i] > votes[best]) best = i;
  }
  return kAllLabels[best];
}

}  // namespace extrav::detail
