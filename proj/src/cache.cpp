#include "cocaco/cache.hpp"

#include <algorithm>
#include <cmath>

#include "cocaco/errors.hpp"

namespace cocaco {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("feature vector must have at least one component");
  for (double x : values) {
    if (!std::isfinite(x)) throw ParameterError("feature vector components must be finite");
  }
}

void require_same_dimension(const FeatureVector& u, const FeatureVector& v) {
  if (u.dimension() != v.dimension()) {
    throw DimensionError("feature vector dimension mismatch: " + std::to_string(u.dimension()) +
                         " vs " + std::to_string(v.dimension()));
  }
}

}  // namespace

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
  check_values(values_);
}

FeatureVector::FeatureVector(std::initializer_list<double> values) : values_(values) {
  check_values(values_);
}

std::string_view to_string(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::NormalizedEuclidean:
      return "normalized_euclidean";
    case SimilarityMetric::Cosine:
      return "cosine";
  }
  return "unknown";
}

std::optional<SimilarityMetric> parse_similarity_metric(std::string_view name) {
  if (name == "normalized_euclidean") return SimilarityMetric::NormalizedEuclidean;
  if (name == "cosine") return SimilarityMetric::Cosine;
  return std::nullopt;
}

double euclidean_distance(const FeatureVector& u, const FeatureVector& v) {
  require_same_dimension(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.dimension(); ++i) {
    const double diff = u[i] - v[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double similarity(const FeatureVector& u, const FeatureVector& v, SimilarityMetric metric) {
  require_same_dimension(u, v);
  switch (metric) {
    case SimilarityMetric::NormalizedEuclidean:
      return 1.0 / (1.0 + euclidean_distance(u, v));
    case SimilarityMetric::Cosine: {
      double dot = 0.0;
      double uu = 0.0;
      double vv = 0.0;
      for (std::size_t i = 0; i < u.dimension(); ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
      }
      if (uu == 0.0 || vv == 0.0) throw UndefinedAngleError("cosine similarity of a zero vector");
      const double cosine = dot / (std::sqrt(uu) * std::sqrt(vv));
      return std::clamp(cosine, 0.0, 1.0);
    }
  }
  return 0.0;
}

bool rounds_to_hit(double best_score) {
  const double rounded = std::floor(best_score + 0.5);
  return std::clamp(rounded, 0.0, 1.0) == 1.0;
}

CacheStore::CacheStore(std::size_t capacity, SimilarityMetric metric)
    : capacity_(capacity), metric_(metric) {
  if (capacity_ == 0) throw ParameterError("cache capacity must be >= 1");
  entries_.reserve(capacity_);
}

void CacheStore::check_dimension(const FeatureVector& v) const {
  if (dimension_ && *dimension_ != v.dimension()) {
    throw DimensionError("vector dimension " + std::to_string(v.dimension()) +
                         " does not match cache dimension " + std::to_string(*dimension_));
  }
}

LookupResult CacheStore::lookup(const FeatureVector& u) {
  LookupResult result;
  if (entries_.empty()) return result;
  check_dimension(u);

  CacheEntry* best = nullptr;
  for (auto& entry : entries_) {
    const double score = similarity(u, entry.vector, metric_);
    if (best == nullptr || score > result.best_score ||
        (score == result.best_score && entry.id < best->id)) {
      best = &entry;
      result.best_score = score;
    }
  }
  result.hit = rounds_to_hit(result.best_score);
  if (result.hit) {
    result.matched = best->id;
    best->last_access = ++clock_;
  }
  return result;
}

void CacheStore::insert(CacheEntry entry) {
  check_dimension(entry.vector);
  if (!std::isfinite(entry.result_bits) || entry.result_bits < 0.0) {
    throw ParameterError("cache entry result_bits must be finite and >= 0");
  }
  dimension_ = entry.vector.dimension();
  next_id_ = std::max(next_id_, entry.id + 1);
  entry.last_access = ++clock_;

  auto same = std::find_if(entries_.begin(), entries_.end(),
                           [&](const CacheEntry& e) { return e.id == entry.id; });
  if (same != entries_.end()) {
    *same = std::move(entry);
    return;
  }
  if (entries_.size() == capacity_) {
    auto victim = std::min_element(entries_.begin(), entries_.end(),
                                   [](const CacheEntry& a, const CacheEntry& b) {
                                     return a.last_access < b.last_access;
                                   });
    *victim = std::move(entry);
    return;
  }
  entries_.push_back(std::move(entry));
}

EntryId CacheStore::admit(FeatureVector vector, double result_bits) {
  const EntryId id = next_id_;
  insert(CacheEntry{id, std::move(vector), result_bits, 0});
  return id;
}

const CacheEntry* CacheStore::find(EntryId id) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const CacheEntry& e) { return e.id == id; });
  return it == entries_.end() ? nullptr : &*it;
}

}  // namespace cocaco
