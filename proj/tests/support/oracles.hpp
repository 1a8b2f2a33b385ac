#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

// Independent reference implementations, written the slow-and-obvious way.
// The production code must agree with these; they must not reuse it.

namespace testutil {

// Exponential-time recursive LCS. Keep inputs short.
inline std::size_t lcs_brute(const std::vector<std::string>& a,
                             const std::vector<std::string>& b,
                             std::size_t i = 0, std::size_t j = 0) {
  if (i == a.size() || j == b.size()) return 0;
  if (a[i] == b[j]) return 1 + lcs_brute(a, b, i + 1, j + 1);
  return std::max(lcs_brute(a, b, i + 1, j), lcs_brute(a, b, i, j + 1));
}

struct OraclePart {
  double start = 0.0;
  double end = 0.0;
  std::vector<double> vec;
};

inline double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

inline double oracle_iou(double s1, double e1, double s2, double e2) {
  const double inter = std::max(0.0, std::min(e1, e2) - std::max(s1, s2));
  const double uni = (e1 - s1) + (e2 - s2) - inter;
  return uni <= 0.0 ? 0.0 : inter / uni;
}

// Overlap-weighted mean of part cosines, in input order; -inf when nothing
// overlaps.
inline double oracle_pair_score(const std::vector<OraclePart>& text,
                                const std::vector<OraclePart>& audio) {
  double weight_total = 0.0;
  double accum = 0.0;
  for (const OraclePart& t : text) {
    for (const OraclePart& a : audio) {
      const double w = oracle_iou(t.start, t.end, a.start, a.end);
      if (w <= 0.0) continue;
      weight_total += w;
      accum += w * oracle_cosine(t.vec, a.vec);
    }
  }
  if (weight_total == 0.0) return -std::numeric_limits<double>::infinity();
  return accum / weight_total;
}

}  // namespace testutil
