#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridecon {

// Running summary of a value series: count, sum, sum of squares, extrema.
// Standard deviation is the sample (n-1) form.
struct Accumulator {
  long count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    ++count;
    sum += v;
    sum_sq += v * v;
    min = std::min(min, v);
    max = std::max(max, v);
  }

  bool empty() const { return count == 0; }
  double mean() const { return sum / static_cast<double>(count); }

  double variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  }
  double stddev() const { return std::sqrt(variance()); }
};

}  // namespace gridecon
