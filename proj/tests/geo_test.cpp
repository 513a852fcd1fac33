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
#include "extrav/geo.hpp"
#include "extrav/random.hpp"
#include "extrav/text.hpp"
#include "support.hpp"

namespace extrav::geo {
namespace {

/// Chord-based great-circle distance; algebraically equal to haversine.
double chord_km(double lat1, double lon1, double lat2, double lon2) {
  const double k = std::numbers::pi / 180.0;
  const auto xyz = [&](double la, double lo) {
    return std::array<double, 3>{std::cos(la * k) * std::cos(lo * k), std::cos(la * k) * std::sin(lo * k),
                                 std::sin(la * k)};
  };
  const auto a = xyz(lat1, lon1), b = xyz(lat2, lon2);
  const double c = std::sqrt(std::pow(a[0] - b[0], 2) + std::pow(a[1] - b[1], 2) + std::pow(a[2] - b[2], 2));
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, c / 2.0));
}

/// Exhaustive scan with the same qualification and tie rules.
template <typename Entry, typename Radius>
std::optional<std::size_t> brute_force(const std::vector<Entry>& es, double lat, double lon, Radius radius) {
  double best = INFINITY;
  for (const auto& e : es) {
    const double d = chord_km(lat, lon, e.lat, e.lon);
    if (d <= radius(e)) best = std::min(best, d);
  }
  if (std::isinf(best)) return std::nullopt;
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const double d = chord_km(lat, lon, es[i].lat, es[i].lon);
    if (d > radius(es[i]) || d > best + kTieToleranceKm) continue;
    if (!pick || es[i].name < es[*pick].name) pick = i;
  }
  return pick;
}

TEST(Haversine, KnownDistances) {
  EXPECT_NEAR(haversine_km(0, 0, 0, 1), kEarthRadiusKm * std::numbers::pi / 180, 1e-9);
  EXPECT_NEAR(haversine_km(90, 0, -90, 0), kEarthRadiusKm * std::numbers::pi, 1e-9);
  EXPECT_EQ(haversine_km(31.2, 121.5, 31.2, 121.5), 0.0);
  EXPECT_NEAR(haversine_km(0, 179.9, 0, -179.9), haversine_km(0, 0, 0, 0.2), 1e-9);
}

TEST(ReverseGeocode, Examples) {
  const Gazetteer g({{"Beijing", 39.9042, 116.4074, 30}, {"Tianjin", 39.3434, 117.3616, 30}});
  EXPECT_EQ(reverse_geocode(39.9042, 116.4074, g), "Beijing");
  EXPECT_EQ(reverse_geocode(10.0, 10.0, g), std::nullopt);
  EXPECT_THROW(reverse_geocode(91.0, 0.0, g), DomainError);
  EXPECT_THROW(reverse_geocode(0, 0, Gazetteer({})), DomainError);
}

TEST(ReverseGeocode, EquidistantTieGoesToSmallerName) {
  const Gazetteer g({{"Zeta", 0.0, 0.1, 50}, {"Alpha", 0.0, -0.1, 50}});
  EXPECT_EQ(chord_km(0, 0, 0, 0.1), chord_km(0, 0, 0, -0.1));
  EXPECT_EQ(reverse_geocode(0.0, 0.0, g), "Alpha");
  // 0.5 m closer to Zeta is still a tie; 5 m closer is not.
  const double half_metre = 0.0005 / (kEarthRadiusKm * std::numbers::pi / 180);
  EXPECT_EQ(reverse_geocode(0.0, half_metre / 2, g), "Alpha");
  EXPECT_EQ(reverse_geocode(0.0, 10 * half_metre, g), "Zeta");
}

TEST(ReverseGeocode, EachEntryUsesItsOwnRadius) {
  const Gazetteer g({{"Small", 0.0, 0.0, 1}, {"Big", 0.0, 0.5, 100}});
  EXPECT_EQ(reverse_geocode(0.0, 0.0, g), "Small");
  EXPECT_EQ(reverse_geocode(0.0, -0.05, g), "Big");
}

TEST(ClassifyPoi, Examples) {
  const PoiIndex idx({{"Mall", PoiCategory::shops, 31.23, 121.47}, {"Cafe", PoiCategory::restaurants, 31.3, 121.5}});
  EXPECT_EQ(classify_poi(31.23, 121.47, idx), PoiCategory::shops);
  EXPECT_EQ(classify_poi(31.23 + 0.09, 121.47 - 0.3, idx, 0.5), std::nullopt);
}

TEST(GeoFiles, LoadCsv) {
  const auto dir = testing::scratch_dir("geo_files");
  text::write_file((dir / "g.csv").string(), "name,lat,lon,radius_km\nBeijing,39.9,116.4,30\n");
  text::write_file((dir / "p.csv").string(), "name,category,lat,lon\nMall,Shops,31.2,121.4\n");
  EXPECT_EQ(Gazetteer::load((dir / "g.csv").string()).entries().size(), 1u);
  EXPECT_EQ(PoiIndex::load((dir / "p.csv").string()).entries()[0].category, PoiCategory::shops);
  text::write_file((dir / "bad.csv").string(), "name,category,lat,lon\nMall,Spaceport,31.2,121.4\n");
  EXPECT_THROW(PoiIndex::load((dir / "bad.csv").string()), Error);
}

std::pair<double, double> random_point(Rng& rng) {
  // Uniform on the sphere.
  return {std::asin(rng.uniform(-1, 1)) * 180 / std::numbers::pi, rng.uniform(-180, 180)};
}

std::pair<double, double> near(Rng& rng, double lat, double lon, double km) {
  const double dlat = rng.uniform(-1, 1) * km / 111.0;
  const double dlon = rng.uniform(-1, 1) * km / (111.0 * std::max(0.05, std::cos(lat * std::numbers::pi / 180)));
  double la = std::clamp(lat + dlat, -90.0, 90.0);
  double lo = lon + dlon;
  if (lo >= 180) lo -= 360;
  if (lo < -180) lo += 360;
  return {la, lo};
}

TEST(GeoOracle, ReverseGeocodeMatchesBruteForce) {
  Rng rng(51);
  std::vector<GazetteerEntry> es;
  for (int i = 0; i < 1000; ++i) {
    auto [la, lo] = i < 950 ? random_point(rng) : near(rng, i % 2 ? 89.0 : 0.0, 179.5, 200);
    es.push_back({"c" + std::to_string(rng.below(700)), la, lo, rng.uniform(20, 600)});
  }
  const Gazetteer g(es);
  int matched = 0, disagreements = 0;
  for (int q = 0; q < 10000; ++q) {
    const auto& anchor = es[rng.below(es.size())];
    auto [la, lo] = q % 2 ? random_point(rng) : near(rng, anchor.lat, anchor.lon, 700);
    const auto want = brute_force(es, la, lo, [](const GazetteerEntry& e) { return e.radius_km; });
    const auto got = g.reverse_geocode(la, lo);
    if (want) ++matched;
    disagreements += (want ? std::optional<std::string>(es[*want].name) : std::nullopt) != got;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(matched, 2000) << "queries should exercise the positive path";
}

TEST(GeoOracle, ClassifyPoiMatchesBruteForce) {
  Rng rng(52);
  std::vector<PoiEntry> es;
  for (int i = 0; i < 1000; ++i) {
    // Dense clusters so that several POIs compete within max_km.
    auto [la, lo] = near(rng, 30.0 + static_cast<double>(i % 10), 120.0 + static_cast<double>(i % 7), 3);
    es.push_back({"p" + std::to_string(rng.below(400)), kAllPoiCategories[rng.below(kPoiCategoryCount)], la, lo});
  }
  const PoiIndex idx(es);
  int matched = 0, disagreements = 0;
  for (int q = 0; q < 10000; ++q) {
    const auto& anchor = es[rng.below(es.size())];
    auto [la, lo] = near(rng, anchor.lat, anchor.lon, 2);
    const double max_km = q % 3 == 0 ? 0.5 : rng.uniform(0.05, 3);
    const auto want = brute_force(es, la, lo, [&](const PoiEntry&) { return max_km; });
    const auto got = idx.classify(la, lo, max_km);
    if (want) ++matched;
    disagreements += (want ? std::optional<PoiCategory>(es[*want].category) : std::nullopt) != got;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(matched, 2000);
}

}  // namespace
}  // namespace extrav::geo
