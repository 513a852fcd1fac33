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


#include "extrav/labeling.hpp"

#include <cmath>
#include <string>

#include "extrav/error.hpp"

namespace extrav {

Label label_from_int(int v) {
  switch (v) {
    case -1:
      return Label::introvert;
    case 0:
      return Label::neutral;
    case 1:
      return Label::extrovert;
    default:
      throw DomainError("label must be -1, 0 or 1, got " + std::to_string(v));
  }
}

std::string_view label_name(Label l) {
  switch (l) {
    case Label::introvert:
      return "introvert";
    case Label::neutral:
      return "neutral";
    case Label::extrovert:
      break;
  }
  return "extrovert";
}

ScoreModel ScoreModel::from_moments(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma)) {
    throw DomainError("score model needs finite mu and sigma > 0");
  }
  return ScoreModel(mu, sigma);
}

ScoreModel fit_score_model(std::span<const double> scores) {
  if (scores.size() < 2) throw DomainError("fit_score_model needs at least 2 scores");
  double sum = 0.0;
  for (double s : scores) sum += s;
  const double mu = sum / static_cast<double>(scores.size());
  double ss = 0.0;
  for (double s : scores) ss += (s - mu) * (s - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(scores.size()));
  if (!(sigma > 0.0)) throw DomainError("fit_score_model: scores have zero variance");
  return ScoreModel::from_moments(mu, sigma);
}

Label label_score(double score, const ScoreModel& model) {
  if (score > model.upper()) return Label::extrovert;
  if (score < model.lower()) return Label::introvert;
  return Label::neutral;
}

}  // namespace extrav
