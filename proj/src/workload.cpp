#include "framedvs/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

void check_probs(const std::vector<double>& probs) {
  if (probs.empty()) throw InvalidInput("distribution has no probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) > CycleDistribution::kProbTolerance * static_cast<double>(probs.size()) &&
      std::abs(total - 1.0) > CycleDistribution::kProbTolerance) {
    throw InvalidInput("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

}  // namespace

CycleDistribution CycleDistribution::uniform(Cycles lo, Cycles hi) {
  if (lo <= 0 || hi < lo) throw InvalidInput("uniform distribution needs 0 < lo <= hi");
  CycleDistribution d;
  d.kind_ = Kind::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

CycleDistribution CycleDistribution::histogram(Cycles bin, std::vector<double> probs) {
  if (bin <= 0) throw InvalidInput("histogram bin size must be positive");
  check_probs(probs);
  CycleDistribution d;
  d.kind_ = Kind::Histogram;
  d.bin_ = bin;
  d.values_.resize(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) d.values_[k] = static_cast<Cycles>(k + 1) * bin;
  d.probs_ = std::move(probs);
  d.build_cdf();
  return d;
}

CycleDistribution CycleDistribution::discrete(std::vector<Cycles> values, std::vector<double> probs) {
  if (values.size() != probs.size()) throw InvalidInput("values and probabilities differ in length");
  check_probs(probs);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  CycleDistribution d;
  d.kind_ = Kind::Discrete;
  for (std::size_t idx : order) {
    if (values[idx] <= 0) throw InvalidInput("cycle counts must be positive");
    if (probs[idx] == 0.0) continue;
    if (!d.values_.empty() && d.values_.back() == values[idx]) {
      d.probs_.back() += probs[idx];
    } else {
      d.values_.push_back(values[idx]);
      d.probs_.push_back(probs[idx]);
    }
  }
  d.build_cdf();
  return d;
}

CycleDistribution CycleDistribution::degenerate(Cycles value) {
  return discrete({value}, {1.0});
}

void CycleDistribution::build_cdf() {
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    acc += probs_[k];
    cdf_[k] = acc;
  }
  // The last nonzero bin closes the CDF so sampling never runs past it.
  for (std::size_t k = probs_.size(); k-- > 0;) {
    if (probs_[k] > 0.0) {
      for (std::size_t j = k; j < cdf_.size(); ++j) cdf_[j] = 1.0;
      break;
    }
  }
}

Cycles CycleDistribution::support_min() const {
  if (kind_ == Kind::Uniform) return lo_;
  for (std::size_t k = 0; k < probs_.size(); ++k)
    if (probs_[k] > 0.0) return values_[k];
  return 0;
}

Cycles CycleDistribution::support_max() const {
  if (kind_ == Kind::Uniform) return hi_;
  for (std::size_t k = probs_.size(); k-- > 0;)
    if (probs_[k] > 0.0) return values_[k];
  return 0;
}

std::size_t CycleDistribution::support_size() const {
  if (kind_ == Kind::Uniform) return static_cast<std::size_t>(hi_ - lo_ + 1);
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

double CycleDistribution::mean() const {
  if (kind_ == Kind::Uniform) return 0.5 * (static_cast<double>(lo_) + static_cast<double>(hi_));
  double m = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) m += probs_[k] * static_cast<double>(values_[k]);
  return m;
}

Cycles CycleDistribution::percentile(double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("percentile level must lie in (0, 1)");
  const double target = 1.0 - eps - kProbTolerance;
  if (kind_ == Kind::Uniform) {
    const auto n = static_cast<double>(hi_ - lo_ + 1);
    auto m = static_cast<Cycles>(std::ceil(target * n));
    m = std::clamp<Cycles>(m, 1, hi_ - lo_ + 1);
    return lo_ + m - 1;
  }
  for (std::size_t k = 0; k < cdf_.size(); ++k)
    if (probs_[k] > 0.0 && cdf_[k] >= target) return values_[k];
  return support_max();
}

Cycles CycleDistribution::sample(Rng& rng) const {
  if (kind_ == Kind::Uniform) return std::uniform_int_distribution<Cycles>(lo_, hi_)(rng);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  auto k = static_cast<std::size_t>(it - cdf_.begin());
  // Skip zero-probability bins that share the cumulative value.
  while (probs_[k] == 0.0 && k + 1 < probs_.size()) ++k;
  return values_[k];
}

std::vector<Mass> CycleDistribution::masses(std::size_t cap) const {
  if (support_size() > cap)
    throw CapExceeded("support of " + std::to_string(support_size()) + " points exceeds cap " +
                      std::to_string(cap));
  std::vector<Mass> out;
  if (kind_ == Kind::Uniform) {
    const double p = 1.0 / static_cast<double>(hi_ - lo_ + 1);
    out.reserve(support_size());
    for (Cycles c = lo_; c <= hi_; ++c) out.push_back({c, p});
    return out;
  }
  for (std::size_t k = 0; k < probs_.size(); ++k)
    if (probs_[k] > 0.0) out.push_back({values_[k], probs_[k]});
  return out;
}

CycleDistribution CycleDistribution::to_histogram(Cycles bin) const {
  if (bin <= 0) throw InvalidInput("histogram bin size must be positive");
  const auto bins = static_cast<std::size_t>((support_max() + bin - 1) / bin);
  std::vector<double> probs(bins, 0.0);
  if (kind_ == Kind::Uniform) {
    const double n = static_cast<double>(hi_ - lo_ + 1);
    for (std::size_t k = 0; k < bins; ++k) {
      const Cycles lo_edge = static_cast<Cycles>(k) * bin + 1;
      const Cycles hi_edge = static_cast<Cycles>(k + 1) * bin;
      const Cycles a = std::max(lo_edge, lo_);
      const Cycles b = std::min(hi_edge, hi_);
      if (b >= a) probs[k] = static_cast<double>(b - a + 1) / n;
    }
  } else {
    for (std::size_t k = 0; k < probs_.size(); ++k) {
      if (probs_[k] == 0.0) continue;
      probs[static_cast<std::size_t>((values_[k] + bin - 1) / bin) - 1] += probs_[k];
    }
  }
  return histogram(bin, std::move(probs));
}

CycleDistribution bin_trace(std::span<const Cycles> counts, Cycles bin) {
  if (counts.empty()) throw InvalidInput("empty cycle trace");
  if (bin <= 0) throw InvalidInput("bin size must be positive");
  Cycles top = 0;
  for (Cycles c : counts) {
    if (c <= 0) throw InvalidInput("trace cycle counts must be positive");
    top = std::max(top, c);
  }
  std::vector<std::size_t> hits(static_cast<std::size_t>((top + bin - 1) / bin), 0);
  for (Cycles c : counts) ++hits[static_cast<std::size_t>((c + bin - 1) / bin) - 1];
  std::vector<double> probs(hits.size());
  const double n = static_cast<double>(counts.size());
  for (std::size_t k = 0; k < hits.size(); ++k) probs[k] = static_cast<double>(hits[k]) / n;
  return CycleDistribution::histogram(bin, std::move(probs));
}

CycleDistribution convolve(std::span<const CycleDistribution> dists, std::size_t cap) {
  if (dists.empty()) throw InvalidInput("nothing to convolve");

  std::vector<std::vector<Mass>> parts;
  parts.reserve(dists.size());
  Cycles grid = 0;
  Cycles lo_sum = 0;
  Cycles hi_sum = 0;
  for (const auto& d : dists) {
    parts.push_back(d.masses(cap));
    for (const auto& m : parts.back()) grid = std::gcd(grid, m.value);
    lo_sum += d.support_min();
    hi_sum += d.support_max();
  }
  const auto span_points = static_cast<std::size_t>((hi_sum - lo_sum) / grid) + 1;
  if (span_points > cap)
    throw CapExceeded("convolution grid of " + std::to_string(span_points) + " points exceeds cap " +
                      std::to_string(cap));

  // Dense accumulation on the common grid, offset by the running minimum.
  std::vector<double> acc(span_points, 0.0);
  std::vector<double> next(span_points, 0.0);
  acc[0] = 1.0;
  Cycles acc_lo = 0;
  std::size_t acc_len = 1;
  for (const auto& part : parts) {
    const Cycles part_lo = part.front().value;
    const auto part_len = static_cast<std::size_t>((part.back().value - part_lo) / grid) + 1;
    const std::size_t out_len = acc_len + part_len - 1;
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(out_len), 0.0);
    const bool flat = part.size() == part_len &&
                      std::all_of(part.begin(), part.end(), [&](const Mass& m) { return m.prob == part.front().prob; });
    if (flat) {
      // Equal masses on a contiguous run: a moving window sum.
      double window = 0.0;
      std::size_t live = 0;  // nonzero entries inside the window
      for (std::size_t k = 0; k < out_len; ++k) {
        if (k < acc_len && acc[k] != 0.0) {
          window += acc[k];
          ++live;
        }
        if (k >= part_len && acc[k - part_len] != 0.0) {
          window -= acc[k - part_len];
          --live;
        }
        if (live == 0) window = 0.0;
        next[k] = live ? std::max(0.0, window) * part.front().prob : 0.0;
      }
    } else {
      for (std::size_t a = 0; a < acc_len; ++a) {
        if (acc[a] == 0.0) continue;
        for (const auto& m : part) {
          const auto b = static_cast<std::size_t>((m.value - part_lo) / grid);
          next[a + b] += acc[a] * m.prob;
        }
      }
    }
    std::swap(acc, next);
    acc_lo += part_lo;
    acc_len = out_len;
  }

  std::vector<Cycles> values;
  std::vector<double> probs;
  for (std::size_t k = 0; k < acc_len; ++k) {
    if (acc[k] == 0.0) continue;
    values.push_back(acc_lo + static_cast<Cycles>(k) * grid);
    probs.push_back(acc[k]);
  }
  return CycleDistribution::discrete(std::move(values), std::move(probs));
}

}  // namespace framedvs
