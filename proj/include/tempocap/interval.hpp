#pragma once

#include <vector>

namespace tempocap {

/// Relative time interval within a track, as fractions of total length.
/// Invariant: 0 <= start < end <= 1.
class TimeInterval {
 public:
  /// Throws Error{invalid_argument} when the invariant does not hold.
  TimeInterval(double start, double end);

  double start() const { return start_; }
  double end() const { return end_; }
  double length() const { return end_ - start_; }

  bool operator==(const TimeInterval& other) const = default;

 private:
  double start_;
  double end_;
};

/// Intersection-over-union of two intervals on the real line.
/// Symmetric, 0 for disjoint intervals, 1 for identical ones.
double interval_iou(const TimeInterval& a, const TimeInterval& b);

/// Splits a track of `duration_s` seconds into consecutive non-overlapping
/// windows of `window_s` seconds, expressed as relative fractions. A final
/// partial window is kept whatever its length; the last boundary is pinned to
/// exactly 1. Throws Error{invalid_argument} for non-positive inputs.
std::vector<TimeInterval> uniform_windows(double duration_s,
                                          double window_s = 10.0);

}  // namespace tempocap
