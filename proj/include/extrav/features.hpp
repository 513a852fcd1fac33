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

// Basic, interactive and linguistic feature families, min-max scaling and the
// declarative registry that fixes the order of a user's feature vector.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extrav/corpus.hpp"

namespace extrav {

using Matrix = std::vector<std::vector<double>>;

enum class FeatureFamily { basic, interactive, linguistic };
enum class InteractionKind { posting, mentioning, retweeting };
enum class Granularity { hour_of_day, day_of_week };

std::string_view family_name(FeatureFamily f);
FeatureFamily family_from_name(std::string_view s);
std::string_view kind_name(InteractionKind k);
std::string_view granularity_name(Granularity g);

struct NamedValue {
  std::string name;
  double value;
};
using NamedValues = std::vector<NamedValue>;

struct RegistryEntry {
  std::string name;
  FeatureFamily family;
  /// Key into the values produced by compute_feature_values(); "reserved" yields 0.
  std::string extractor;
};

class FeatureRegistry {
 public:
  explicit FeatureRegistry(std::vector<RegistryEntry> entries);

  /// 13 basic (12 computed + 1 reserved) + 32 interactive + |terms| + 1 linguistic.
  static FeatureRegistry default_registry(std::span<const std::string> selected_terms);

  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::vector<std::string> names() const;
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Tab-separated "name family extractor" lines with a fingerprint comment.
  std::string serialize() const;
  static FeatureRegistry parse(std::string_view content);

 private:
  std::vector<RegistryEntry> entries_;
  std::uint64_t fingerprint_ = 0;
};

struct FeatureVector {
  std::string user_id;
  std::vector<double> values;
  std::uint64_t registry_fingerprint = 0;
};

struct InteractionProfile {
  InteractionKind kind;
  Granularity granularity;
  std::vector<double> bins;
};

struct ProfileSummary {
  double mean = 0.0;
  int peak_index = 0;
  double peak_value = 0.0;
  int low_index = 0;
  double variance = 0.0;
};

struct InteractionRates {
  double mention_rate = 0.0;
  double retweet_rate = 0.0;
};

/// Personality descriptor terms; Latin letters are lowercased on construction.
class TermLexicon {
 public:
  explicit TermLexicon(std::vector<std::string> terms);
  static TermLexicon load(const std::string& path);
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
};

struct TermScore {
  std::string term;
  double score = 0.0;
  std::size_t document_frequency = 0;
};

/// Gender code, seven tweeting-pattern formulas (natural log), three privacy
/// flags and description length. The tweet count NT is the profile counter,
/// raised to the observed count when the archive holds more tweets than it.
NamedValues extract_basic(const UserRecord& user, std::size_t tweet_count_observed,
                          const Date& snapshot_date);

InteractionProfile interaction_profile(std::span<const TweetRecord> tweets, InteractionKind kind,
                                       Granularity granularity, std::int64_t lifetime_days);

ProfileSummary summarize_profile(const InteractionProfile& profile);

InteractionRates interaction_rates(std::span<const TweetRecord> tweets);

/// Observed lifetime in days: first to last tweet date, inclusive; at least 1.
std::int64_t observed_lifetime_days(std::span<const TweetRecord> tweets);

/// Strips links, @handles, retweet-chain markers and share suffixes; lowercases
/// Latin letters; collapses whitespace.
std::string clean_tweet_text(std::string_view text);
std::string build_user_document(std::span<const TweetRecord> tweets);
std::string build_user_document(std::span<const std::string> texts);

/// Corpus-summed tf*idf with idf = ln(N / (1 + df)). Terms never seen in any
/// document rank after every seen term; remaining ties keep lexicon order.
std::vector<TermScore> score_terms(std::span<const std::string> documents,
                                   const TermLexicon& lexicon);
std::vector<std::string> select_terms(std::span<const std::string> documents,
                                      const TermLexicon& lexicon, std::size_t k);

NamedValues extract_linguistic(std::string_view document, std::span<const std::string> selected,
                               std::span<const TweetRecord> tweets);

/// Per-column min-max scaling. Constant columns map to 0 and out-of-range
/// values are clipped into [0, 1].
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> mins, std::vector<double> maxs);
  static Standardizer fit(const Matrix& matrix);
  /// Every column maps onto itself (min 0, max 1).
  static Standardizer identity(std::size_t columns);

  std::vector<double> transform(std::span<const double> row) const;
  Matrix transform(const Matrix& matrix) const;

  const std::vector<double>& mins() const noexcept { return mins_; }
  const std::vector<double>& maxs() const noexcept { return maxs_; }
  std::size_t columns() const noexcept { return mins_.size(); }

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

struct Standardized {
  Matrix matrix;
  Standardizer scaler;
};

Standardized standardize(const Matrix& matrix);

/// Every value any registry entry may refer to, keyed by extractor id.
NamedValues compute_feature_values(const UserRecord& user, std::span<const TweetRecord> tweets,
                                   std::span<const std::string> selected_terms,
                                   const Date& snapshot_date);

/// One raw (unscaled) value per registry entry, in registry order.
FeatureVector assemble(const UserRecord& user, std::span<const TweetRecord> tweets,
                       const FeatureRegistry& registry,
                       std::span<const std::string> selected_terms, const Date& snapshot_date);

/// Tab-separated feature matrix: header "user_id" + feature names.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::string> user_ids;
  Matrix rows;
};

std::string format_feature_table(const FeatureTable& table, std::string_view preamble = {});
FeatureTable parse_feature_table(std::string_view content);

}  // namespace extrav
