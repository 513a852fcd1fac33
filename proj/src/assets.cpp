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


#include "extrav/assets.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "extrav/text.hpp"

namespace extrav::assets {

using analytics::Channel;

const std::vector<std::string>& default_lexicon() {
  static const std::vector<std::string> terms = {
    "outgoing", "sociable", "talkative", "energetic", "assertive", "enthusiastic", "friendly",
    "gregarious", "lively", "bold", "adventurous", "expressive", "vibrant", "chatty",
    "spontaneous", "confident", "dynamic", "extroverted", "charismatic", "animated",
    "boisterous", "exuberant", "jovial", "playful", "vivacious", "bubbly", "dominant",
    "forceful", "loud", "noisy", "flamboyant", "daring", "impulsive", "active", "leader",
    "performer", "entertainer", "humorous", "witty", "affable", "approachable", "warm",
    "open-hearted", "cordial", "convivial", "hospitable", "welcoming", "amiable", "engaging",
    "magnetic", "passionate", "optimistic", "upbeat", "zealous", "eager", "ardent", "spirited",
    "excitable", "reserved", "quiet", "shy", "introverted", "withdrawn", "solitary", "private",
    "reflective", "thoughtful", "introspective", "contemplative", "calm", "serene", "composed",
    "restrained", "modest", "humble", "timid", "bashful", "retiring", "aloof", "detached",
    "distant", "guarded", "secretive", "taciturn", "reticent", "laconic", "silent",
    "soft-spoken", "meek", "mild", "gentle", "placid", "tranquil", "unassuming", "low-key",
    "loner", "homebody", "bookish", "studious", "pensive", "meditative", "independent",
    "self-reliant", "cautious", "careful", "deliberate", "measured", "methodical", "observant",
    "analytical", "philosophical", "dreamy", "imaginative", "artistic", "sensitive",
    "antisocial", "standoffish", "reclusive", "hermit", "wallflower", "lonesome", "isolated",
    "insular", "diffident", "hesitant", "self-conscious", "inhibited", "conservative",
    "conventional", "orderly", "punctual", "disciplined", "organized", "diligent",
    "hardworking", "responsible", "dependable", "reliable", "conscientious", "thorough",
    "meticulous", "perfectionist", "tidy", "curious", "inventive", "creative", "original",
    "insightful", "intellectual", "clever", "sharp", "bright", "wise", "patient", "tolerant",
    "kind", "considerate", "empathetic", "caring", "generous", "helpful", "sincere", "honest",
    "trustworthy", "loyal", "faithful", "devoted", "supportive", "cooperative", "agreeable",
    "stubborn", "rigid", "moody", "temperamental", "volatile", "touchy", "irritable", "tense",
    "nervous", "stable", "steady", "resilient", "easygoing", "laid-back", "relaxed", "carefree",
    "ambitious", "driven", "competitive", "determined", "persistent", "tenacious", "resolute",
    "decisive", "charming", "polite", "courteous", "gracious", "tactful", "diplomatic",
    "sympathetic", "外向", "内向", "开朗", "活泼", "健谈", "热情", "社交", "安静", "害羞", "孤僻", "沉默", "稳重", "大方",
    "腼腆", "乐观", "自信", "冷静", "随和", "独立", "细心", "认真", "勤奋", "友善", "幽默", "果断", "谨慎", "温和", "宅",
    "聚会", "派对", "朋友", "独处", "交际", "合群", "孤独", "低调", "张扬", "热闹", "喧闹", "寡言", "内敛", "豪爽", "爽快",
    "率直", "直率", "敏感", "体贴", "善良", "真诚", "坦率", "谦虚", "固执", "急躁", "耐心", "踏实", "靠谱", "好动", "好奇",
    "浪漫", "理性",
  };
  return terms;
}

const std::vector<std::string>& default_buying_keywords() {
  static const std::vector<std::string> words = {
      "buy",     "shopping", "discount", "11.11", "amazon", "taobao", "jd.com",
      "coupon", "checkout", "bargain",  "购物",  "打折",   "淘宝",   "下单"};
  return words;
}

const analytics::EmotionLexicon& default_emotion_lexicon() {
  static const analytics::EmotionLexicon lex = {{
      {"angry", "furious", "outraged", "irritated", "livid", "生气", "愤怒"},
      {"disgusting", "gross", "nasty", "revolting", "yuck", "恶心", "讨厌"},
      {"happy", "joyful", "delighted", "glad", "hooray", "开心", "高兴"},
      {"sad", "gloomy", "heartbroken", "miserable", "tearful", "难过", "伤心"},
      {"afraid", "scared", "terrified", "frightened", "panicky", "害怕", "恐惧"},
  }};
  return lex;
}

const analytics::SourceMap& default_source_map() {
  static const analytics::SourceMap map = {
      {"Sina News", Channel::news},     {"Tencent News", Channel::news},
      {"新浪新闻", Channel::news},       {"今日头条", Channel::news},
      {"Youku", Channel::video},        {"Miaopai", Channel::video},
      {"优酷", Channel::video},          {"秒拍", Channel::video},
      {"NetEase Music", Channel::music}, {"QQ Music", Channel::music},
      {"网易云音乐", Channel::music},    {"虾米音乐", Channel::music},
      {"Meitu", Channel::selfie},       {"B612", Channel::selfie},
      {"美图秀秀", Channel::selfie},     {"Faceu", Channel::selfie},
      {"iPhone", Channel::other},       {"Android", Channel::other},
      {"Weibo Web", Channel::other},    {"HUAWEI", Channel::other},
  };
  return map;
}

const std::vector<geo::GazetteerEntry>& default_gazetteer() {
  static const std::vector<geo::GazetteerEntry> cities = {
      {"Beijing", 39.904, 116.407, 30.0},     {"Shanghai", 31.230, 121.474, 30.0},
      {"Guangzhou", 23.129, 113.264, 30.0},   {"Shenzhen", 22.543, 114.058, 30.0},
      {"Chengdu", 30.573, 104.066, 30.0},     {"Chongqing", 29.563, 106.551, 30.0},
      {"Wuhan", 30.593, 114.305, 30.0},       {"Xi'an", 34.342, 108.940, 30.0},
      {"Hangzhou", 30.274, 120.155, 30.0},    {"Nanjing", 32.060, 118.797, 30.0},
      {"Tianjin", 39.343, 117.362, 30.0},     {"Suzhou", 31.299, 120.585, 30.0},
      {"Changsha", 28.228, 112.939, 30.0},    {"Zhengzhou", 34.747, 113.625, 30.0},
      {"Shenyang", 41.806, 123.432, 30.0},    {"Qingdao", 36.067, 120.383, 30.0},
      {"Dalian", 38.914, 121.615, 30.0},      {"Xiamen", 24.480, 118.089, 30.0},
      {"Kunming", 25.039, 102.718, 30.0},     {"Harbin", 45.803, 126.535, 30.0},
      {"Jinan", 36.651, 117.120, 30.0},       {"Fuzhou", 26.075, 119.306, 30.0},
      {"Hefei", 31.821, 117.227, 30.0},       {"Nanchang", 28.682, 115.858, 30.0},
      {"Nanning", 22.817, 108.366, 30.0},     {"Guiyang", 26.647, 106.630, 30.0},
      {"Lanzhou", 36.061, 103.834, 30.0},     {"Taiyuan", 37.871, 112.549, 30.0},
      {"Shijiazhuang", 38.043, 114.515, 30.0}, {"Hohhot", 40.842, 111.750, 30.0},
      {"Urumqi", 43.825, 87.617, 30.0},       {"Lhasa", 29.652, 91.172, 30.0},
      {"Xining", 36.617, 101.778, 30.0},      {"Yinchuan", 38.487, 106.231, 30.0},
      {"Haikou", 20.044, 110.199, 30.0},      {"Changchun", 43.817, 125.324, 30.0},
      {"Ningbo", 29.868, 121.544, 30.0},      {"Wenzhou", 27.994, 120.699, 30.0},
      {"Sanya", 18.253, 109.512, 30.0},       {"Lijiang", 26.872, 100.227, 30.0},
  };
  return cities;
}

std::string format_line_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    out += s;
    out += '\n';
  }
  return out;
}

std::string format_emotion_lexicon(const analytics::EmotionLexicon& lexicon) {
  nlohmann::ordered_json j;
  for (auto e : analytics::kAllEmotions) {
    j[std::string(analytics::emotion_name(e))] = lexicon[static_cast<std::size_t>(e)];
  }
  return j.dump(2) + "\n";
}

std::string format_source_map(const analytics::SourceMap& map) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [tag, channel] : map) j[tag] = std::string(analytics::channel_name(channel));
  return j.dump(2) + "\n";
}

std::string format_gazetteer(const std::vector<geo::GazetteerEntry>& entries) {
  std::string out = "name,lat,lon,radius_km\n";
  for (const auto& e : entries) out += fmt::format("{},{},{},{}\n", e.name, e.lat, e.lon, e.radius_km);
  return out;
}

std::string format_poi(const std::vector<geo::PoiEntry>& entries) {
  std::string out = "name,category,lat,lon\n";
  for (const auto& e : entries) {
    out += fmt::format("{},{},{},{}\n", e.name, geo::category_name(e.category), e.lat, e.lon);
  }
  return out;
}

AssetPaths asset_paths(const std::string& dir) {
  const std::string base = dir.empty() || dir.back() == '/' ? dir : dir + "/";
  return {base + "lexicon.txt",     base + "buying_keywords.txt", base + "emotion_lexicon.json",
          base + "source_map.json", base + "gazetteer.csv",       base + "poi.csv"};
}

AssetPaths write_default_assets(const std::string& dir) {
  auto paths = asset_paths(dir);
  text::write_file(paths.lexicon, format_line_list(default_lexicon()));
  text::write_file(paths.buying_keywords, format_line_list(default_buying_keywords()));
  text::write_file(paths.emotion_lexicon, format_emotion_lexicon(default_emotion_lexicon()));
  text::write_file(paths.source_map, format_source_map(default_source_map()));
  text::write_file(paths.gazetteer, format_gazetteer(default_gazetteer()));
  paths.poi.reset();
  return paths;
}

}  // namespace extrav::assets
