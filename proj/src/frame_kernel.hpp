#pragma once

#include <cmath>
#include <cstddef>

#include "framedvs/core.hpp"
#include "framedvs/simulator.hpp"

namespace framedvs::detail {

struct FrameTotals {
  Joules energy = 0.0;
  Seconds switch_time = 0.0;
  Seconds end = 0.0;
  std::size_t changes = 0;
  bool missed = false;
};

/// Hot path shared by run_frame and the Monte Carlo drivers. `finish`
/// may be null.
FrameTotals simulate_frame(const FrameSystem& sys, const StrategySet& strategy, const Cycles* cycles,
                           bool overheads, Seconds* finish);

/// Running moments for one block of frames; merged with Chan's update.
struct Accumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t misses = 0;
  double changes = 0.0;
  double switch_time = 0.0;
  double busy_time = 0.0;

  void add(const FrameTotals& f) {
    ++n;
    const double delta = f.energy - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (f.energy - mean);
    misses += f.missed ? 1 : 0;
    changes += static_cast<double>(f.changes);
    switch_time += f.switch_time;
    busy_time += f.end;
  }

  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
    misses += o.misses;
    changes += o.changes;
    switch_time += o.switch_time;
    busy_time += o.busy_time;
  }

  SimStats stats() const {
    SimStats s;
    s.frames = n;
    if (n == 0) return s;
    const double dn = static_cast<double>(n);
    s.mean_energy = mean;
    s.energy_stderr = n > 1 ? std::sqrt(m2 / (dn - 1.0)) / std::sqrt(dn) : 0.0;
    s.miss_rate = static_cast<double>(misses) / dn;
    s.mean_frequency_changes = changes / dn;
    s.mean_switch_time = switch_time / dn;
    s.mean_busy_time = busy_time / dn;
    return s;
  }
};

}  // namespace framedvs::detail
