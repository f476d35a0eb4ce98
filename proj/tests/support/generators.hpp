#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "framedvs/core.hpp"
#include "framedvs/workload.hpp"

namespace testsupport {

using namespace framedvs;

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  Rng rng;
};

// Probabilities summing to one; the last entry absorbs rounding.
inline std::vector<double> random_probs(Gen& g, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = g.real(0.05, 1.0));
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) acc += (p[k] /= total);
  p.back() = 1.0 - acc;
  return p;
}

// Strictly increasing frequencies in "cycles per second" units small enough
// to reason about by hand, with convex-ish power.
inline FrequencyTable random_cpu(Gen& g, std::size_t m, bool overheads = false) {
  std::vector<Hertz> f;
  Hertz cur = static_cast<double>(g.integer(50, 200));
  for (std::size_t j = 0; j < m; ++j) {
    f.push_back(cur);
    cur += static_cast<double>(g.integer(50, 400));
  }
  std::vector<Watts> p;
  for (Hertz x : f) p.push_back(1e-9 * x * x * x * g.real(0.9, 1.1));
  std::sort(p.begin(), p.end());
  if (!overheads) return FrequencyTable(f, p);

  std::vector<std::vector<Seconds>> pt(m, std::vector<Seconds>(m, 0.0));
  std::vector<Seconds> st(m);
  for (std::size_t a = 0; a < m; ++a) {
    st[a] = g.real(0.0, 0.004);
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) pt[a][b] = g.real(0.0, 0.01);
  }
  return FrequencyTable(f, p, pt, st);
}

// Discrete distribution with at most `max_support` points whose maximum is
// exactly `wcec`.
inline CycleDistribution random_dist(Gen& g, Cycles wcec, std::size_t max_support) {
  const auto n = static_cast<std::size_t>(g.integer(1, static_cast<std::int64_t>(max_support)));
  std::vector<Cycles> values{wcec};
  while (values.size() < n) {
    const Cycles v = g.integer(std::max<Cycles>(1, wcec / 5), wcec);
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    if (wcec < 5 && values.size() >= static_cast<std::size_t>(wcec)) break;
  }
  return CycleDistribution::discrete(values, random_probs(g, values.size()));
}

struct SystemShape {
  std::size_t max_tasks = 4;
  std::size_t max_freqs = 4;
  std::size_t max_support = 3;
  bool overheads = false;
  // Deadline drawn between slack_lo and slack_hi times the all-f_M span
  // (plus switch allowances when overheads are on).
  double slack_lo = 1.0;
  double slack_hi = 3.0;
};

inline FrameSystem random_system(Gen& g, const SystemShape& shape) {
  const auto n = static_cast<std::size_t>(g.integer(1, static_cast<std::int64_t>(shape.max_tasks)));
  const auto m = static_cast<std::size_t>(g.integer(2, static_cast<std::int64_t>(shape.max_freqs)));
  auto cpu = random_cpu(g, m, shape.overheads);
  std::vector<TaskSpec> tasks;
  Cycles total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Cycles w = g.integer(10, 200);
    total += w;
    tasks.push_back({w, random_dist(g, w, shape.max_support), {}});
  }
  const double tight = static_cast<double>(total) / cpu.max() +
                       static_cast<double>(n) * cpu.worst_job_switch();
  const double d = tight * g.real(shape.slack_lo, shape.slack_hi);
  return FrameSystem(std::move(tasks), d, std::move(cpu));
}

// Arbitrary step functions over [0, D]: 1-4 steps, random table speeds.
// Unless `monotone`, 30% of functions are left unsorted.
inline StrategySet random_strategy(Gen& g, const FrameSystem& sys, bool monotone = false) {
  const auto freqs = std::vector<Hertz>(sys.cpu().freqs().begin(), sys.cpu().freqs().end());
  StrategySet s;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto k = static_cast<std::size_t>(g.integer(1, 4));
    std::vector<Seconds> times{0.0};
    while (times.size() < k) times.push_back(g.real(0.0, sys.deadline()));
    std::sort(times.begin(), times.end());
    std::vector<Hertz> fs;
    for (std::size_t j = 0; j < k; ++j) fs.push_back(g.pick(freqs));
    if (monotone || g.coin(0.7)) std::sort(fs.begin(), fs.end());
    std::vector<StepPoint> pts;
    for (std::size_t j = 0; j < k; ++j) pts.push_back({times[j], fs[j]});
    s.funcs.push_back(StepFunction::normalize(pts));
  }
  return s;
}

}  // namespace testsupport
