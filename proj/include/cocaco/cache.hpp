#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cocaco {

/// Request or result descriptor compared by the edge cache. Non-empty, finite.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> values);
  FeatureVector(std::initializer_list<double> values);

  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const FeatureVector&) const = default;

 private:
  std::vector<double> values_;
};

enum class SimilarityMetric { NormalizedEuclidean, Cosine };

std::string_view to_string(SimilarityMetric metric);
std::optional<SimilarityMetric> parse_similarity_metric(std::string_view name);

double euclidean_distance(const FeatureVector& u, const FeatureVector& v);

/// Similarity score in [0, 1].
///
/// NormalizedEuclidean maps the Euclidean distance d to 1 / (1 + d), so the
/// score is 1 only for identical vectors and 0.5 at d = 1. Cosine returns
/// max(0, cos(angle)) and throws UndefinedAngleError on a zero vector.
double similarity(const FeatureVector& u, const FeatureVector& v, SimilarityMetric metric);

using EntryId = std::uint64_t;

struct CacheEntry {
  EntryId id = 0;
  FeatureVector vector;
  double result_bits = 0.0;
  // Logical tick of the last insert or hit. Assigned by the store.
  std::uint64_t last_access = 0;
};

struct LookupResult {
  bool hit = false;
  double best_score = 0.0;
  std::optional<EntryId> matched;

  int indicator() const { return hit ? 1 : 0; }
};

/// Rounded hit indicator floor(best_score + 1/2), clamped to {0, 1}.
bool rounds_to_hit(double best_score);

/// Capacity-bounded similarity cache with LRU eviction.
///
/// The first insert fixes the vector dimension. Every insert and every hit
/// advances an internal clock and stamps the touched entry, so `last_access`
/// values are unique and eviction always has a single victim.
class CacheStore {
 public:
  explicit CacheStore(std::size_t capacity,
                      SimilarityMetric metric = SimilarityMetric::NormalizedEuclidean);

  /// Best match over all entries; ties on score go to the lowest id. A hit
  /// refreshes the matched entry's recency.
  LookupResult lookup(const FeatureVector& u);

  /// Inserts or replaces (same id) an entry, evicting the least recently
  /// accessed one first when full.
  void insert(CacheEntry entry);

  /// Inserts a new entry under the next unused id and returns that id.
  EntryId admit(FeatureVector vector, double result_bits);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  SimilarityMetric metric() const { return metric_; }
  std::optional<std::size_t> dimension() const { return dimension_; }
  std::span<const CacheEntry> entries() const { return entries_; }
  const CacheEntry* find(EntryId id) const;
  bool contains(EntryId id) const { return find(id) != nullptr; }

 private:
  void check_dimension(const FeatureVector& v) const;

  std::size_t capacity_;
  SimilarityMetric metric_;
  std::vector<CacheEntry> entries_;
  std::optional<std::size_t> dimension_;
  std::uint64_t clock_ = 0;
  EntryId next_id_ = 0;
};

}  // namespace cocaco
