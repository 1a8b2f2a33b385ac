#pragma once

#include <cstddef>
#include <vector>

namespace tempocap {

// Default dimensionality of sentence embeddings; any uniform dimension is
// accepted so that text and audio feature spaces of different sizes can share
// the same machinery.
inline constexpr std::size_t kDefaultEmbeddingDim = 384;

/// Dense real-valued embedding. Immutable after construction.
class EmbeddingVector {
 public:
  /// Throws Error{invalid_argument} when `values` is empty.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const EmbeddingVector& other) const = default;

 private:
  std::vector<double> values_;
};

/// Euclidean norm.
double norm(const EmbeddingVector& v);

/// Cosine similarity a.b / (|a| |b|), clamped to [-1, 1].
/// Throws Error{invalid_argument} on dimension mismatch or a zero-norm input
/// (distinct messages).
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Dot product over raw spans of equal length, summed with four independent
/// accumulators in a fixed order. The summation order is part of the
/// determinism contract: results are identical across runs and platforms.
double fixed_order_dot(const double* a, const double* b, std::size_t n);

}  // namespace tempocap
