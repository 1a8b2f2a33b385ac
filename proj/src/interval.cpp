#include "tempocap/interval.hpp"

#include <algorithm>
#include <cmath>

#include "tempocap/error.hpp"

namespace tempocap {

TimeInterval::TimeInterval(double start, double end)
    : start_(start), end_(end) {
  if (!std::isfinite(start) || !std::isfinite(end) || start < 0.0 ||
      end > 1.0 || start >= end)
    throw Error(ErrorKind::invalid_argument,
                "invalid interval: require 0 <= start < end <= 1");
}

double interval_iou(const TimeInterval& a, const TimeInterval& b) {
  const double inter = std::max(
      0.0, std::min(a.end(), b.end()) - std::max(a.start(), b.start()));
  const double uni = a.length() + b.length() - inter;
  return inter / uni;
}

std::vector<TimeInterval> uniform_windows(double duration_s, double window_s) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    throw Error(ErrorKind::invalid_argument, "duration must be positive");
  if (!(window_s > 0.0) || !std::isfinite(window_s))
    throw Error(ErrorKind::invalid_argument, "window length must be positive");

  std::vector<TimeInterval> windows;
  double t = 0.0;
  while (t < duration_s) {
    const double next = t + window_s;
    const double start = t / duration_s;
    const double end = next >= duration_s ? 1.0 : next / duration_s;
    windows.emplace_back(start, end);
    t = next;
  }
  return windows;
}

}  // namespace tempocap
