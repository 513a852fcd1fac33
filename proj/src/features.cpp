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


#include "extrav/features.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <unordered_map>

#include "extrav/error.hpp"
#include "extrav/text.hpp"

namespace extrav {

namespace {

constexpr double kLogFloor = 1e-6;
constexpr InteractionKind kKinds[] = {InteractionKind::posting, InteractionKind::mentioning,
                                      InteractionKind::retweeting};
constexpr Granularity kGranularities[] = {Granularity::hour_of_day, Granularity::day_of_week};
constexpr const char* kSummaryNames[] = {"mean", "peak_index", "peak_value", "low_index",
                                         "variance"};
constexpr const char* kBasicNames[] = {
    "gender",          "log_account_age",     "log_tweets",          "log_tweet_frequency",
    "log_followers",   "log_followees",       "tweets_per_follower", "tweets_per_followee",
    "allow_comments",  "allow_messages",      "allow_location",      "description_length"};
constexpr const char* kReserved = "reserved";
constexpr const char* kAvgLength = "avg_tweet_length";

double safe_log(double x) { return std::log(std::max(x, kLogFloor)); }

bool counts_as(const TweetRecord& t, InteractionKind kind) {
  switch (kind) {
    case InteractionKind::posting:
      return true;
    case InteractionKind::mentioning:
      return t.mention_count > 0;
    case InteractionKind::retweeting:
      return t.is_retweet;
  }
  return false;
}

std::string profile_feature_name(InteractionKind k, Granularity g, const char* summary) {
  return fmt::format("{}_{}_{}", kind_name(k), granularity_name(g), summary);
}

bool starts_with_at(std::string_view s, std::size_t i, std::string_view prefix) {
  return s.substr(i, prefix.size()) == prefix;
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string format_number(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view family_name(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::basic:
      return "basic";
    case FeatureFamily::interactive:
      return "interactive";
    case FeatureFamily::linguistic:
      break;
  }
  return "linguistic";
}

FeatureFamily family_from_name(std::string_view s) {
  if (s == "basic") return FeatureFamily::basic;
  if (s == "interactive") return FeatureFamily::interactive;
  if (s == "linguistic") return FeatureFamily::linguistic;
  throw Error("unknown feature family '" + std::string(s) + "'");
}

std::string_view kind_name(InteractionKind k) {
  switch (k) {
    case InteractionKind::posting:
      return "posting";
    case InteractionKind::mentioning:
      return "mentioning";
    case InteractionKind::retweeting:
      break;
  }
  return "retweeting";
}

std::string_view granularity_name(Granularity g) {
  return g == Granularity::hour_of_day ? "hour" : "weekday";
}

// ---------------------------------------------------------------------------
// Registry

FeatureRegistry::FeatureRegistry(std::vector<RegistryEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string> seen;
  text::Fnv1a h;
  for (const auto& e : entries_) {
    if (e.name.empty()) throw Error("feature registry: empty feature name");
    if (!seen.insert(e.name).second) {
      throw Error("feature registry: duplicate feature name '" + e.name + "'");
    }
    h.update(e.name);
    h.update("\t");
    h.update(family_name(e.family));
    h.update("\t");
    h.update(e.extractor);
    h.update("\n");
  }
  fingerprint_ = h.digest();
}

FeatureRegistry FeatureRegistry::default_registry(std::span<const std::string> selected_terms) {
  std::vector<RegistryEntry> e;
  for (const char* n : kBasicNames) e.push_back({n, FeatureFamily::basic, n});
  e.push_back({"reserved_basic", FeatureFamily::basic, kReserved});
  for (auto k : kKinds) {
    for (auto g : kGranularities) {
      for (const char* s : kSummaryNames) {
        auto n = profile_feature_name(k, g, s);
        e.push_back({n, FeatureFamily::interactive, n});
      }
    }
  }
  e.push_back({"mention_rate", FeatureFamily::interactive, "mention_rate"});
  e.push_back({"retweet_rate", FeatureFamily::interactive, "retweet_rate"});
  for (const auto& t : selected_terms) {
    e.push_back({"term:" + t, FeatureFamily::linguistic, "term:" + t});
  }
  e.push_back({kAvgLength, FeatureFamily::linguistic, kAvgLength});
  return FeatureRegistry(std::move(e));
}

std::vector<std::string> FeatureRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

std::string FeatureRegistry::serialize() const {
  std::string out = "# registry fingerprint=" + text::to_hex(fingerprint_) + "\n";
  out += "name\tfamily\textractor\n";
  for (const auto& e : entries_) {
    out += fmt::format("{}\t{}\t{}\n", e.name, family_name(e.family), e.extractor);
  }
  return out;
}

FeatureRegistry FeatureRegistry::parse(std::string_view content) {
  std::vector<RegistryEntry> entries;
  bool header = false;
  for (const auto& raw : text::split(content, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "name\tfamily\textractor") throw Error("registry: unexpected header");
      header = true;
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw Error("registry: expected 3 columns in '" + std::string(line) + "'");
    entries.push_back({cols[0], family_from_name(cols[1]), cols[2]});
  }
  return FeatureRegistry(std::move(entries));
}

// ---------------------------------------------------------------------------
// Lexicon

TermLexicon::TermLexicon(std::vector<std::string> terms) {
  std::set<std::string> seen;
  for (auto& t : terms) {
    auto norm = text::ascii_lower(text::trim(t));
    if (norm.empty()) throw Error("lexicon: empty term");
    if (!seen.insert(norm).second) throw Error("lexicon: duplicate term '" + norm + "'");
    terms_.push_back(std::move(norm));
  }
}

TermLexicon TermLexicon::load(const std::string& path) {
  return TermLexicon(text::read_line_list(path));
}

// ---------------------------------------------------------------------------
// Basic

NamedValues extract_basic(const UserRecord& user, std::size_t tweet_count_observed,
                          const Date& snapshot_date) {
  const double ars = static_cast<double>(snapshot_date.days_since_epoch() -
                                         user.register_date.days_since_epoch());
  if (ars < 0) throw DomainError("extract_basic: register_date after snapshot for " + user.user_id);
  const double nt =
      static_cast<double>(std::max<std::int64_t>(user.n_tweets, tweet_count_observed));
  const double nfer = static_cast<double>(user.n_followers);
  const double nfee = static_cast<double>(user.n_followees);
  double gender = 0.5;
  if (user.gender == Gender::male) gender = 1.0;
  if (user.gender == Gender::female) gender = 0.0;

  return {
      {"gender", gender},
      {"log_account_age", std::log(ars + 1.0)},
      {"log_tweets", std::log(nt + 1.0)},
      {"log_tweet_frequency", safe_log(nt / (ars + 1.0))},
      {"log_followers", std::log(nfer + 1.0)},
      {"log_followees", std::log(nfee + 1.0)},
      {"tweets_per_follower", nt / (nfer + 1.0)},
      {"tweets_per_followee", nt / (nfee + 1.0)},
      {"allow_comments", user.allow_comments ? 1.0 : 0.0},
      {"allow_messages", user.allow_messages ? 1.0 : 0.0},
      {"allow_location", user.allow_location ? 1.0 : 0.0},
      {"description_length", static_cast<double>(text::utf8_length(user.description))},
  };
}

// ---------------------------------------------------------------------------
// Interactive

InteractionProfile interaction_profile(std::span<const TweetRecord> tweets, InteractionKind kind,
                                       Granularity granularity, std::int64_t lifetime_days) {
  if (lifetime_days < 1) throw DomainError("interaction_profile: lifetime_days must be >= 1");
  const bool hourly = granularity == Granularity::hour_of_day;
  InteractionProfile p{kind, granularity, std::vector<double>(hourly ? 24 : 7, 0.0)};
  for (const auto& t : tweets) {
    if (!counts_as(t, kind)) continue;
    p.bins[static_cast<std::size_t>(hourly ? t.timestamp.hour() : t.timestamp.weekday())] += 1.0;
  }
  const double periods =
      hourly ? static_cast<double>(lifetime_days) : static_cast<double>(lifetime_days) / 7.0;
  for (double& b : p.bins) b /= periods;
  return p;
}

ProfileSummary summarize_profile(const InteractionProfile& profile) {
  const auto& b = profile.bins;
  ProfileSummary s;
  if (b.empty()) return s;
  const double n = static_cast<double>(b.size());
  s.mean = std::accumulate(b.begin(), b.end(), 0.0) / n;
  s.peak_value = b[0];
  double low = b[0];
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] > s.peak_value) {
      s.peak_value = b[i];
      s.peak_index = static_cast<int>(i);
    }
    if (b[i] < low) {
      low = b[i];
      s.low_index = static_cast<int>(i);
    }
  }
  double ss = 0.0;
  for (double v : b) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / n;
  return s;
}

InteractionRates interaction_rates(std::span<const TweetRecord> tweets) {
  if (tweets.empty()) throw DomainError("interaction_rates: empty tweet list");
  std::size_t mentions = 0, retweets = 0;
  for (const auto& t : tweets) {
    mentions += t.mention_count > 0;
    retweets += t.is_retweet;
  }
  const double n = static_cast<double>(tweets.size());
  return {static_cast<double>(mentions) / n, static_cast<double>(retweets) / n};
}

std::int64_t observed_lifetime_days(std::span<const TweetRecord> tweets) {
  if (tweets.empty()) return 1;
  auto [lo, hi] = std::minmax_element(
      tweets.begin(), tweets.end(),
      [](const TweetRecord& a, const TweetRecord& b) { return a.timestamp < b.timestamp; });
  return hi->timestamp.date().days_since_epoch() - lo->timestamp.date().days_since_epoch() + 1;
}

// ---------------------------------------------------------------------------
// Linguistic

std::string clean_tweet_text(std::string_view s) {
  static constexpr std::string_view kFullColon = "\xEF\xBC\x9A";  // U+FF1A
  static constexpr std::string_view kFullComma = "\xEF\xBC\x8C";  // U+FF0C
  static constexpr std::string_view kShareOpen[] = {"(\xE5\x88\x86\xE4\xBA\xAB\xE8\x87\xAA",
                                                     "\xEF\xBC\x88\xE5\x88\x86\xE4\xBA\xAB\xE8\x87\xAA"};
  static constexpr std::string_view kShareClose[] = {")", "\xEF\xBC\x89"};

  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (starts_with_at(s, i, "http://") || starts_with_at(s, i, "https://") ||
        starts_with_at(s, i, "www.")) {
      while (i < s.size() && !is_ascii_space(s[i])) ++i;
      out.push_back(' ');
      continue;
    }
    if (s[i] == '@') {
      ++i;
      while (i < s.size() && !is_ascii_space(s[i]) && s[i] != ':' && s[i] != ',' &&
             !starts_with_at(s, i, kFullColon) && !starts_with_at(s, i, kFullComma)) {
        ++i;
      }
      if (i < s.size() && s[i] == ':') ++i;
      if (starts_with_at(s, i, kFullColon)) i += kFullColon.size();
      out.push_back(' ');
      continue;
    }
    if (starts_with_at(s, i, "//")) {
      i += 2;
      out.push_back(' ');
      continue;
    }
    bool share = false;
    for (int k = 0; k < 2; ++k) {
      if (starts_with_at(s, i, kShareOpen[k])) {
        const auto close = s.find(kShareClose[k], i);
        i = close == std::string_view::npos ? s.size() : close + kShareClose[k].size();
        share = true;
        break;
      }
    }
    if (share) {
      out.push_back(' ');
      continue;
    }
    out.push_back(s[i]);
    ++i;
  }

  // Lowercase and collapse whitespace.
  std::string norm;
  norm.reserve(out.size());
  bool pending_space = false;
  for (char c : out) {
    if (is_ascii_space(c)) {
      pending_space = !norm.empty();
      continue;
    }
    if (pending_space) norm.push_back(' ');
    pending_space = false;
    norm.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return norm;
}

std::string build_user_document(std::span<const std::string> texts) {
  std::string doc;
  for (const auto& t : texts) {
    auto cleaned = clean_tweet_text(t);
    if (cleaned.empty()) continue;
    if (!doc.empty()) doc.push_back(' ');
    doc += cleaned;
  }
  return doc;
}

std::string build_user_document(std::span<const TweetRecord> tweets) {
  std::vector<std::string> texts;
  texts.reserve(tweets.size());
  for (const auto& t : tweets) texts.push_back(t.text);
  return build_user_document(texts);
}

std::vector<TermScore> score_terms(std::span<const std::string> documents,
                                   const TermLexicon& lexicon) {
  if (documents.empty()) throw DomainError("select_terms: needs at least one document");
  const double n_docs = static_cast<double>(documents.size());
  std::vector<TermScore> scores;
  scores.reserve(lexicon.size());
  for (const auto& term : lexicon.terms()) {
    std::size_t df = 0;
    std::size_t tf_total = 0;
    for (const auto& d : documents) {
      const auto tf = text::count_occurrences(d, term);
      df += tf > 0;
      tf_total += tf;
    }
    const double idf = std::log(n_docs / (1.0 + static_cast<double>(df)));
    // tf*idf summed over documents; idf is document-independent.
    scores.push_back({term, static_cast<double>(tf_total) * idf, df});
  }
  return scores;
}

std::vector<std::string> select_terms(std::span<const std::string> documents,
                                      const TermLexicon& lexicon, std::size_t k) {
  if (k > lexicon.size()) throw DomainError("select_terms: k exceeds lexicon size");
  auto scores = score_terms(documents, lexicon);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool seen_a = scores[a].document_frequency > 0;
    const bool seen_b = scores[b].document_frequency > 0;
    if (seen_a != seen_b) return seen_a;
    return scores[a].score > scores[b].score;
  });
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(scores[order[i]].term);
  return out;
}

NamedValues extract_linguistic(std::string_view document, std::span<const std::string> selected,
                               std::span<const TweetRecord> tweets) {
  NamedValues out;
  out.reserve(selected.size() + 1);
  for (const auto& term : selected) {
    out.push_back({"term:" + term, text::contains(document, term) ? 1.0 : 0.0});
  }
  double total = 0.0;
  for (const auto& t : tweets) total += static_cast<double>(text::utf8_length(clean_tweet_text(t.text)));
  out.push_back({kAvgLength, tweets.empty() ? 0.0 : total / static_cast<double>(tweets.size())});
  return out;
}

// ---------------------------------------------------------------------------
// Scaling

Standardizer::Standardizer(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  if (mins_.size() != maxs_.size()) throw Error("standardizer: min/max size mismatch");
  for (std::size_t j = 0; j < mins_.size(); ++j) {
    if (!(mins_[j] <= maxs_[j])) throw Error("standardizer: min > max in column " + std::to_string(j));
  }
}

Standardizer Standardizer::fit(const Matrix& matrix) {
  if (matrix.empty()) throw DomainError("standardize: needs at least one row");
  const auto cols = matrix.front().size();
  std::vector<double> mins(matrix.front()), maxs(matrix.front());
  for (const auto& row : matrix) {
    if (row.size() != cols) throw DomainError("standardize: ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      mins[j] = std::min(mins[j], row[j]);
      maxs[j] = std::max(maxs[j], row[j]);
    }
  }
  return Standardizer(std::move(mins), std::move(maxs));
}

Standardizer Standardizer::identity(std::size_t columns) {
  return Standardizer(std::vector<double>(columns, 0.0), std::vector<double>(columns, 1.0));
}

std::vector<double> Standardizer::transform(std::span<const double> row) const {
  if (row.size() != mins_.size()) throw DomainError("standardizer: row width mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double range = maxs_[j] - mins_[j];
    out[j] = range > 0.0 ? std::clamp((row[j] - mins_[j]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

Matrix Standardizer::transform(const Matrix& matrix) const {
  Matrix out;
  out.reserve(matrix.size());
  for (const auto& row : matrix) out.push_back(transform(row));
  return out;
}

Standardized standardize(const Matrix& matrix) {
  auto scaler = Standardizer::fit(matrix);
  auto scaled = scaler.transform(matrix);
  return {std::move(scaled), std::move(scaler)};
}

// ---------------------------------------------------------------------------
// Assembly

NamedValues compute_feature_values(const UserRecord& user, std::span<const TweetRecord> tweets,
                                   std::span<const std::string> selected_terms,
                                   const Date& snapshot_date) {
  NamedValues values = extract_basic(user, tweets.size(), snapshot_date);
  values.push_back({kReserved, 0.0});
  const auto lifetime = observed_lifetime_days(tweets);
  for (auto k : kKinds) {
    for (auto g : kGranularities) {
      const auto s = summarize_profile(interaction_profile(tweets, k, g, lifetime));
      const double parts[] = {s.mean, static_cast<double>(s.peak_index), s.peak_value,
                              static_cast<double>(s.low_index), s.variance};
      for (std::size_t i = 0; i < 5; ++i) {
        values.push_back({profile_feature_name(k, g, kSummaryNames[i]), parts[i]});
      }
    }
  }
  const auto rates = tweets.empty() ? InteractionRates{} : interaction_rates(tweets);
  values.push_back({"mention_rate", rates.mention_rate});
  values.push_back({"retweet_rate", rates.retweet_rate});
  const auto doc = build_user_document(tweets);
  for (auto& v : extract_linguistic(doc, selected_terms, tweets)) values.push_back(std::move(v));
  return values;
}

FeatureVector assemble(const UserRecord& user, std::span<const TweetRecord> tweets,
                       const FeatureRegistry& registry,
                       std::span<const std::string> selected_terms, const Date& snapshot_date) {
  const auto values = compute_feature_values(user, tweets, selected_terms, snapshot_date);
  std::unordered_map<std::string_view, double> lookup;
  lookup.reserve(values.size());
  for (const auto& v : values) lookup.emplace(v.name, v.value);

  FeatureVector fv{user.user_id, {}, registry.fingerprint()};
  fv.values.reserve(registry.size());
  for (const auto& e : registry.entries()) {
    const auto it = lookup.find(e.extractor);
    if (it == lookup.end()) {
      throw Error("feature registry entry '" + e.name + "' refers to unknown extractor '" +
                  e.extractor + "'");
    }
    fv.values.push_back(it->second);
  }
  return fv;
}

// ---------------------------------------------------------------------------
// Tables

std::string format_feature_table(const FeatureTable& table, std::string_view preamble) {
  std::string out(preamble);
  out += "user_id";
  for (const auto& n : table.names) {
    out.push_back('\t');
    out += n;
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out += table.user_ids[i];
    for (double v : table.rows[i]) {
      out.push_back('\t');
      out += format_number(v);
    }
    out.push_back('\n');
  }
  return out;
}

FeatureTable parse_feature_table(std::string_view content) {
  FeatureTable t;
  bool header = false;
  for (const auto& raw : text::split(content, '\n')) {
    if (raw.empty() || raw.front() == '#') continue;
    auto cols = text::split(raw, '\t');
    if (!header) {
      if (cols.empty() || cols[0] != "user_id") throw Error("feature table: missing header");
      t.names.assign(cols.begin() + 1, cols.end());
      header = true;
      continue;
    }
    if (cols.size() != t.names.size() + 1) throw Error("feature table: ragged row for " + cols[0]);
    t.user_ids.push_back(cols[0]);
    std::vector<double> row;
    row.reserve(t.names.size());
    for (std::size_t j = 1; j < cols.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(cols[j].c_str(), &end);
      if (end == cols[j].c_str() || *end != '\0') {
        throw Error("feature table: bad number '" + cols[j] + "' for " + cols[0]);
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!header) throw Error("feature table: missing header");
  return t;
}

}  // namespace extrav
