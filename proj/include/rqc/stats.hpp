#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rqc {

// Streaming mean/variance accumulator. merge() is exact for the integer
// count and adds the partial sums in call order, so a fixed merge order
// gives bit-identical results.
struct MeanVar {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }

  void merge(const MeanVar& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }

  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }

  double variance() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double v = (sum_sq - static_cast<double>(count) * m * m) /
                     static_cast<double>(count - 1);
    return v > 0.0 ? v : 0.0;
  }

  double stderr_mean() const {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

// Counts over non-negative integers. Merging is commutative and exact.
struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(std::uint64_t value) {
    if (value >= counts.size()) counts.resize(value + 1, 0);
    ++counts[value];
    ++total;
  }

  void merge(const Histogram& o) {
    if (o.counts.size() > counts.size()) counts.resize(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    total += o.total;
  }

  // Smallest value whose CDF reaches q.
  std::uint64_t quantile(double q) const {
    const auto need = static_cast<std::uint64_t>(
        std::ceil(q * static_cast<double>(total)));
    std::uint64_t acc = 0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
      acc += counts[v];
      if (acc >= need) return v;
    }
    return counts.empty() ? 0 : counts.size() - 1;
  }

  double mean() const {
    if (total == 0) return 0.0;
    double s = 0.0;
    for (std::size_t v = 0; v < counts.size(); ++v)
      s += static_cast<double>(v) * static_cast<double>(counts[v]);
    return s / static_cast<double>(total);
  }
};

// Per-component MeanVar over a fixed-length vector of observations.
struct VectorMeanVar {
  std::vector<MeanVar> comp;

  VectorMeanVar() = default;
  explicit VectorMeanVar(std::size_t size) : comp(size) {}

  void add(std::size_t i, double x) { comp[i].add(x); }

  void merge(const VectorMeanVar& o) {
    if (comp.empty()) comp.resize(o.comp.size());
    for (std::size_t i = 0; i < o.comp.size(); ++i) comp[i].merge(o.comp[i]);
  }
};

}  // namespace rqc
