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


#include "extrav/geo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include "extrav/error.hpp"
#include "extrav/text.hpp"

namespace extrav::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr std::string_view kCategoryNames[] = {
    "Restaurants",    "Hotels",        "Life services", "Shops",    "Enterprises",
    "Transportation", "Entertainment", "Neighborhoods", "Education"};

void check_coordinates(double lat, double lon, const std::string& what) {
  if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0)) {
    throw DomainError(what + ": coordinates out of range");
  }
}

double parse_double(const std::string& s, const std::string& ctx) {
  char* end = nullptr;
  const auto t = std::string(text::trim(s));
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0') throw Error(ctx + ": bad number '" + s + "'");
  return v;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::string_view header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!seen_header) {
      if (t != header) throw Error(path + ": expected header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    auto cols = text::split(t, ',');
    if (cols.size() != text::split(header, ',').size()) {
      throw Error(path + ":" + std::to_string(line_no) + ": wrong column count");
    }
    rows.push_back(std::move(cols));
  }
  if (!seen_header) throw Error(path + ": missing header");
  return rows;
}

/// Nearest qualifying candidate with the tie rule; `dist` yields the distance
/// or a negative value when the candidate does not qualify.
template <typename DistFn, typename NameFn>
std::optional<std::size_t> pick_nearest(const std::vector<std::size_t>& ids, DistFn dist,
                                        NameFn name) {
  std::vector<std::pair<double, std::size_t>> ok;
  double best = std::numeric_limits<double>::infinity();
  for (auto id : ids) {
    const double d = dist(id);
    if (d < 0.0) continue;
    ok.emplace_back(d, id);
    best = std::min(best, d);
  }
  if (ok.empty()) return std::nullopt;
  std::optional<std::size_t> pick;
  for (const auto& [d, id] : ok) {
    if (d > best + kTieToleranceKm) continue;
    if (!pick || name(id) < name(*pick) || (name(id) == name(*pick) && id < *pick)) pick = id;
  }
  return pick;
}

}  // namespace

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  const double p1 = lat1 * kDegToRad, p2 = lat2 * kDegToRad;
  const double dp = p2 - p1;
  const double dl = (lon2 - lon1) * kDegToRad;
  const double h = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::string_view category_name(PoiCategory c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<PoiCategory> category_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kPoiCategoryCount; ++i) {
    if (kCategoryNames[i] == s) return kAllPoiCategories[i];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

void SpatialGrid::insert(std::size_t id, double lat, double lon) {
  const int li = std::clamp(static_cast<int>(std::floor(lat)) + 90, 0, kLatCells - 1);
  const int lj = ((static_cast<int>(std::floor(lon)) + 180) % kLonCells + kLonCells) % kLonCells;
  cells_[static_cast<std::size_t>(li * kLonCells + lj)].push_back(id);
}

std::vector<std::size_t> SpatialGrid::candidates(double lat, double lon, double radius_km) const {
  // Angular radius with a small margin against rounding at the boundary.
  const double delta = radius_km / kEarthRadiusKm * (1.0 + 1e-9) + 1e-12;
  const double dlat = delta / kDegToRad;
  const double lat_lo = lat - dlat, lat_hi = lat + dlat;
  bool all_lon = lat_lo <= -90.0 || lat_hi >= 90.0;
  double dlon = 180.0;
  if (!all_lon) {
    const double s = std::sin(delta) / std::cos(lat * kDegToRad);
    if (s >= 1.0) all_lon = true;
    else dlon = std::asin(s) / kDegToRad;
  }
  if (dlon >= 180.0) all_lon = true;

  const int i_lo = std::clamp(static_cast<int>(std::floor(lat_lo)) + 90, 0, kLatCells - 1);
  const int i_hi = std::clamp(static_cast<int>(std::floor(lat_hi)) + 90, 0, kLatCells - 1);
  int j_lo = 0, j_count = kLonCells;
  if (!all_lon) {
    j_lo = static_cast<int>(std::floor(lon - dlon)) + 180;
    const int j_hi = static_cast<int>(std::floor(lon + dlon)) + 180;
    j_count = std::min(j_hi - j_lo + 1, kLonCells);
  }
  std::vector<std::size_t> out;
  for (int i = i_lo; i <= i_hi; ++i) {
    for (int k = 0; k < j_count; ++k) {
      const int j = ((j_lo + k) % kLonCells + kLonCells) % kLonCells;
      const auto& cell = cells_[static_cast<std::size_t>(i * kLonCells + j)];
      out.insert(out.end(), cell.begin(), cell.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    check_coordinates(e.lat, e.lon, "gazetteer entry '" + e.name + "'");
    if (!(e.radius_km > 0.0)) throw DomainError("gazetteer entry '" + e.name + "': radius must be > 0");
    grid_.insert(i, e.lat, e.lon);
    max_radius_km_ = std::max(max_radius_km_, e.radius_km);
  }
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::vector<GazetteerEntry> entries;
  for (const auto& c : read_csv(path, "name,lat,lon,radius_km")) {
    entries.push_back({std::string(text::trim(c[0])), parse_double(c[1], path),
                       parse_double(c[2], path), parse_double(c[3], path)});
  }
  return Gazetteer(std::move(entries));
}

std::optional<std::string> Gazetteer::reverse_geocode(double lat, double lon) const {
  if (entries_.empty()) throw DomainError("reverse_geocode: empty gazetteer");
  check_coordinates(lat, lon, "reverse_geocode");
  const auto ids = grid_.candidates(lat, lon, max_radius_km_);
  const auto pick = pick_nearest(
      ids,
      [&](std::size_t id) {
        const auto& e = entries_[id];
        const double d = haversine_km(lat, lon, e.lat, e.lon);
        return d <= e.radius_km ? d : -1.0;
      },
      [&](std::size_t id) -> const std::string& { return entries_[id].name; });
  if (!pick) return std::nullopt;
  return entries_[*pick].name;
}

PoiIndex::PoiIndex(std::vector<PoiEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    check_coordinates(entries_[i].lat, entries_[i].lon, "POI '" + entries_[i].name + "'");
    grid_.insert(i, entries_[i].lat, entries_[i].lon);
  }
}

PoiIndex PoiIndex::load(const std::string& path) {
  std::vector<PoiEntry> entries;
  for (const auto& c : read_csv(path, "name,category,lat,lon")) {
    const auto cat = category_from_name(text::trim(c[1]));
    if (!cat) throw Error(path + ": unknown POI category '" + c[1] + "'");
    entries.push_back({std::string(text::trim(c[0])), *cat, parse_double(c[2], path),
                       parse_double(c[3], path)});
  }
  return PoiIndex(std::move(entries));
}

std::optional<PoiCategory> PoiIndex::classify(double lat, double lon, double max_km) const {
  if (entries_.empty()) throw DomainError("classify_poi: empty POI index");
  check_coordinates(lat, lon, "classify_poi");
  const auto ids = grid_.candidates(lat, lon, max_km);
  const auto pick = pick_nearest(
      ids,
      [&](std::size_t id) {
        const double d = haversine_km(lat, lon, entries_[id].lat, entries_[id].lon);
        return d <= max_km ? d : -1.0;
      },
      [&](std::size_t id) -> const std::string& { return entries_[id].name; });
  if (!pick) return std::nullopt;
  return entries_[*pick].category;
}

std::optional<std::string> reverse_geocode(double lat, double lon, const Gazetteer& gazetteer) {
  return gazetteer.reverse_geocode(lat, lon);
}

std::optional<PoiCategory> classify_poi(double lat, double lon, const PoiIndex& index,
                                        double max_km) {
  return index.classify(lat, lon, max_km);
}

}  // namespace extrav::geo
