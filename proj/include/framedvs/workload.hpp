#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace framedvs {

using Cycles = std::int64_t;
using Rng = std::mt19937_64;

struct Mass {
  Cycles value;
  double prob;
};

/// Distribution of the number of cycles a task uses in one frame.
///
/// Three shapes are supported:
///  - uniform{lo, hi}: every integer in [lo, hi] equally likely;
///  - histogram{b, p}: p[k-1] is the probability of using between (k-1)b
///    (excluded) and kb (included) cycles. Samples and moments place the
///    mass at the upper edge kb, which never understates the load;
///  - discrete: explicit (value, probability) points.
class CycleDistribution {
 public:
  enum class Kind { Uniform, Histogram, Discrete };

  static constexpr double kProbTolerance = 1e-12;

  static CycleDistribution uniform(Cycles lo, Cycles hi);
  static CycleDistribution histogram(Cycles bin, std::vector<double> probs);
  static CycleDistribution discrete(std::vector<Cycles> values, std::vector<double> probs);
  static CycleDistribution degenerate(Cycles value);

  Kind kind() const { return kind_; }
  Cycles support_min() const;
  Cycles support_max() const;
  std::size_t support_size() const;

  double mean() const;

  /// Smallest support value k with P[c <= k] >= 1 - eps, for 0 < eps < 1.
  Cycles percentile(double eps) const;

  Cycles sample(Rng& rng) const;

  /// Every (value, probability) with nonzero probability, ascending.
  /// Throws CapExceeded when the support exceeds `cap` points.
  std::vector<Mass> masses(std::size_t cap = 10'000'000) const;

  /// Re-bins onto a regular grid of width `bin` (mass moves to the upper
  /// edge of its bin). Uniform ranges are binned analytically.
  CycleDistribution to_histogram(Cycles bin) const;

  // Raw parameters, for serialization.
  Cycles lo() const { return lo_; }
  Cycles hi() const { return hi_; }
  Cycles bin() const { return bin_; }
  const std::vector<Cycles>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }

  friend bool operator==(const CycleDistribution&, const CycleDistribution&) = default;

 private:
  CycleDistribution() = default;
  void build_cdf();

  Kind kind_ = Kind::Discrete;
  Cycles lo_ = 0;
  Cycles hi_ = 0;
  Cycles bin_ = 0;
  // Histogram: values_[k] = (k+1) * bin_, probs_ as given (zeros kept).
  // Discrete: sorted unique values with their probabilities.
  std::vector<Cycles> values_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

/// Histogram of a raw per-frame cycle trace with bin width `bin`.
CycleDistribution bin_trace(std::span<const Cycles> counts, Cycles bin);

/// Exact distribution of the sum of independent cycle counts.
/// The dense sum grid must not exceed `cap` points.
CycleDistribution convolve(std::span<const CycleDistribution> dists,
                           std::size_t cap = 10'000'000);

}  // namespace framedvs
