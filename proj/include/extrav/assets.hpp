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

// Built-in default assets. Each one is a placeholder that can be replaced by a
// file of the same format.

#include <optional>
#include <string>
#include <vector>

#include "extrav/analytics.hpp"
#include "extrav/geo.hpp"

namespace extrav::assets {

/// 261 personality descriptor terms, English and Chinese.
const std::vector<std::string>& default_lexicon();
/// 14 buying keywords.
const std::vector<std::string>& default_buying_keywords();
const analytics::EmotionLexicon& default_emotion_lexicon();
const analytics::SourceMap& default_source_map();
/// 40 major Chinese cities, 30 km radius each.
const std::vector<geo::GazetteerEntry>& default_gazetteer();

std::string format_line_list(const std::vector<std::string>& items);
std::string format_emotion_lexicon(const analytics::EmotionLexicon& lexicon);
std::string format_source_map(const analytics::SourceMap& map);
std::string format_gazetteer(const std::vector<geo::GazetteerEntry>& entries);
std::string format_poi(const std::vector<geo::PoiEntry>& entries);

struct AssetPaths {
  std::string lexicon;
  std::string buying_keywords;
  std::string emotion_lexicon;
  std::string source_map;
  std::string gazetteer;
  std::optional<std::string> poi;
};

/// Standard file names inside an asset directory.
AssetPaths asset_paths(const std::string& dir);

/// Writes every default asset into `dir` (no POI file).
AssetPaths write_default_assets(const std::string& dir);

}  // namespace extrav::assets
