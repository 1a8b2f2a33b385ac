#include "tempocap/embedding.hpp"

#include <cmath>

#include "tempocap/error.hpp"

namespace tempocap {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty())
    throw Error(ErrorKind::invalid_argument,
                "embedding must have at least one dimension");
}

double fixed_order_dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

double norm(const EmbeddingVector& v) {
  const double* p = v.values().data();
  return std::sqrt(fixed_order_dot(p, p, v.dim()));
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::invalid_argument,
                "embedding dimension mismatch: " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0)
    throw Error(ErrorKind::invalid_argument, "zero-norm embedding");
  const double dot = fixed_order_dot(a.values().data(), b.values().data(), a.dim());
  double c = dot / (na * nb);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

}  // namespace tempocap
