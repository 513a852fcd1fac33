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

// Stage orchestration. Each stage reads and writes documented files under the
// output directory (see docs/data-formats.md), so any stage can be rerun on
// its own from persisted intermediates.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extrav/corpus.hpp"
#include "extrav/error.hpp"
#include "extrav/models.hpp"

namespace extrav::pipeline {

struct PipelineConfig {
  std::string users_path;
  std::string tweets_path;
  std::string lexicon_path;
  std::string buying_keywords_path;
  std::string emotion_lexicon_path;
  std::string source_map_path;
  /// Empty: the spatial facet is skipped with a notice.
  std::string gazetteer_path;
  /// Empty: POI shares are skipped inside the spatial facet.
  std::string poi_path;
  Date snapshot_date{2016, 3, 31};
  std::int64_t min_tweets = 100;
  std::size_t top_terms = 84;
  int folds = 10;
  ModelKind model = ModelKind::svm_rbf;
  Hyperparameters hp;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  double interval_cap_hours = 24.0;
  double poi_max_km = 0.5;
  double correlation_threshold = 0.13;
  std::string badge = "Binding-Taobao";

  /// Fills every asset path from a directory written by `extrav assets`.
  void use_asset_dir(const std::string& dir);
  /// Every configured path must exist.
  void validate() const;
  /// out_dir is not serialized so that relocated runs stay byte-identical.
  std::string to_json() const;
  /// Keys absent from the document keep their defaults.
  static PipelineConfig from_json(std::string_view content);
};

/// Stage failure carrying the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

enum class Facet { temporal, spatial, sharing, interaction, purchasing, emotion, badge };
inline constexpr std::array<Facet, 7> kAllFacets = {Facet::temporal,    Facet::spatial,
                                                    Facet::sharing,     Facet::interaction,
                                                    Facet::purchasing,  Facet::emotion,
                                                    Facet::badge};
std::string_view facet_name(Facet f);
std::optional<Facet> facet_from_name(std::string_view s);

/// FNV-1a over the corpus files and every configured asset file.
std::string input_fingerprint(const PipelineConfig& config);

void run_ingest(const PipelineConfig& config);
void run_features(const PipelineConfig& config);
void run_label(const PipelineConfig& config);
/// Cross-validates one model kind, or all three when none is given.
void run_cv(const PipelineConfig& config, std::optional<ModelKind> only = std::nullopt);
void run_train(const PipelineConfig& config);
void run_classify(const PipelineConfig& config);
void run_analyze(const PipelineConfig& config, Facet facet);
/// Returns false when an analysis artifact is missing; the gap is noted in
/// the summary table and the remaining tables are still written.
bool run_report(const PipelineConfig& config);

/// ingest, features, label, cv, train, classify, analyze (all facets), report.
/// Returns the report status.
bool run_pipeline(const PipelineConfig& config);

/// Names of the facet tables written by run_report, without extension.
inline constexpr std::array<std::string_view, 9> kReportTables = {
    "hourly", "periods", "intervals", "spatial", "sharing",
    "interactions", "purchasing", "emotion", "badges"};

}  // namespace extrav::pipeline
