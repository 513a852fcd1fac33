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

// Offline reverse geocoding and POI categorization over a spherical grid index.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extrav::geo {

inline constexpr double kEarthRadiusKm = 6371.0088;
/// Candidates within this distance of the nearest one are treated as equidistant.
inline constexpr double kTieToleranceKm = 0.001;

double haversine_km(double lat1, double lon1, double lat2, double lon2);

struct GazetteerEntry {
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  double radius_km = 1.0;
};

enum class PoiCategory {
  restaurants,
  hotels,
  life_services,
  shops,
  enterprises,
  transportation,
  entertainment,
  neighborhoods,
  education,
};

inline constexpr std::size_t kPoiCategoryCount = 9;
inline constexpr std::array<PoiCategory, kPoiCategoryCount> kAllPoiCategories = {
    PoiCategory::restaurants,    PoiCategory::hotels,        PoiCategory::life_services,
    PoiCategory::shops,          PoiCategory::enterprises,   PoiCategory::transportation,
    PoiCategory::entertainment,  PoiCategory::neighborhoods, PoiCategory::education};

std::string_view category_name(PoiCategory c);
std::optional<PoiCategory> category_from_name(std::string_view s);

struct PoiEntry {
  std::string name;
  PoiCategory category = PoiCategory::restaurants;
  double lat = 0.0;
  double lon = 0.0;
};

/// 1-degree bucket grid over (lat, lon). A query visits only the cells that
/// can hold a point within the search radius, handling poles and the
/// antimeridian.
class SpatialGrid {
 public:
  void insert(std::size_t id, double lat, double lon);
  /// Ids of every inserted point whose cell may lie within radius_km.
  std::vector<std::size_t> candidates(double lat, double lon, double radius_km) const;

 private:
  static constexpr int kLatCells = 181;
  static constexpr int kLonCells = 360;
  std::vector<std::vector<std::size_t>> cells_ =
      std::vector<std::vector<std::size_t>>(kLatCells * kLonCells);
};

class Gazetteer {
 public:
  explicit Gazetteer(std::vector<GazetteerEntry> entries);
  static Gazetteer load(const std::string& path);

  const std::vector<GazetteerEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Nearest entry whose own radius covers the point; near-ties resolve to
  /// the lexicographically smaller name.
  std::optional<std::string> reverse_geocode(double lat, double lon) const;

 private:
  std::vector<GazetteerEntry> entries_;
  SpatialGrid grid_;
  double max_radius_km_ = 0.0;
};

class PoiIndex {
 public:
  explicit PoiIndex(std::vector<PoiEntry> entries);
  static PoiIndex load(const std::string& path);

  const std::vector<PoiEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Category of the nearest POI within max_km, ties as in reverse geocoding.
  std::optional<PoiCategory> classify(double lat, double lon, double max_km = 0.5) const;

 private:
  std::vector<PoiEntry> entries_;
  SpatialGrid grid_;
};

/// Free-function forms; both throw on an empty index.
std::optional<std::string> reverse_geocode(double lat, double lon, const Gazetteer& gazetteer);
std::optional<PoiCategory> classify_poi(double lat, double lon, const PoiIndex& index,
                                        double max_km = 0.5);

}  // namespace extrav::geo
