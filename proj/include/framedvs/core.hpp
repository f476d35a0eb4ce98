#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framedvs/workload.hpp"

namespace framedvs {

// Units: frequencies in cycles/second, times in seconds, energy in Joules.
using Seconds = double;
using Hertz = double;
using Watts = double;
using Joules = double;

/// Finishing times within this much of the deadline count as on time;
/// the check allows the same slack at step boundaries.
/// Step boundaries come from closed forms, so worst-case finishes land on
/// the deadline up to floating-point rounding.
inline constexpr Seconds kTimeTolerance = 1e-9;

enum class Rounding { Up, Closest };

/// The CPU's discrete speeds f_1 < ... < f_M with their power draw and
/// job-switch time penalties.
class FrequencyTable {
 public:
  /// `switch_penalty[a][b]` is P_T(f_a, f_b); `same_speed_switch[a]` is
  /// S_T(f_a); `switch_energy[a][b]` is the energy of a frequency change.
  /// Empty tables mean zero overhead.
  FrequencyTable(std::vector<Hertz> freqs, std::vector<Watts> power,
                 std::vector<std::vector<Seconds>> switch_penalty = {},
                 std::vector<Seconds> same_speed_switch = {},
                 std::vector<std::vector<Joules>> switch_energy = {});

  std::size_t size() const { return freqs_.size(); }
  Hertz freq(std::size_t j) const { return freqs_[j]; }
  Watts power(std::size_t j) const { return power_[j]; }
  Hertz min() const { return freqs_.front(); }
  Hertz max() const { return freqs_.back(); }
  std::span<const Hertz> freqs() const { return freqs_; }
  std::span<const Watts> powers() const { return power_; }

  /// Exact membership lookup.
  std::optional<std::size_t> index_of(Hertz f) const;
  Watts power_at(Hertz f) const;

  Seconds switch_penalty(Hertz from, Hertz to) const;
  Seconds same_speed_switch(Hertz f) const;
  Joules switch_energy(Hertz from, Hertz to) const;

  /// P_T^M, the largest frequency-change penalty.
  Seconds max_switch_penalty() const { return pt_max_; }
  /// S_T^M = S_T(f_M).
  Seconds top_same_speed_switch() const { return st_.back(); }
  /// Upper bound on the time any job switch can take, with or without a
  /// frequency change.
  Seconds worst_job_switch() const { return worst_switch_; }
  bool has_overheads() const { return worst_switch_ > 0.0; }

  /// Up: smallest f_j >= x (throws Infeasible above f_M).
  /// Closest: f_j nearest to x, ties resolved toward the higher frequency.
  Hertz quantize(Hertz x, Rounding mode) const;

  const std::vector<std::vector<Seconds>>& switch_penalty_table() const { return pt_; }
  const std::vector<Seconds>& same_speed_switch_table() const { return st_; }
  const std::vector<std::vector<Joules>>& switch_energy_table() const { return energy_; }

 private:
  std::size_t checked_index(Hertz f) const;

  std::vector<Hertz> freqs_;
  std::vector<Watts> power_;
  std::vector<std::vector<Seconds>> pt_;
  std::vector<Seconds> st_;
  std::vector<std::vector<Joules>> energy_;
  Seconds pt_max_ = 0.0;
  Seconds worst_switch_ = 0.0;
};

struct TaskSpec {
  Cycles wcec = 0;
  CycleDistribution dist = CycleDistribution::degenerate(1);
  std::string label;
};

enum class Feasibility { NeverSchedulable, AlwaysSchedulable, Depends };

/// N tasks run in list order once per frame of length D on one CPU.
class FrameSystem {
 public:
  FrameSystem(std::vector<TaskSpec> tasks, Seconds deadline, FrequencyTable cpu);

  /// A copy used only to plan strategies: the WCECs may sit below the
  /// distributions' support (soft-deadline planning with percentiles).
  /// Never simulate against such a system.
  static FrameSystem for_planning(const FrameSystem& base, std::vector<Cycles> wcecs,
                                  Seconds deadline);

  std::size_t size() const { return tasks_.size(); }
  const TaskSpec& task(std::size_t i) const { return tasks_[i]; }
  const std::vector<TaskSpec>& tasks() const { return tasks_; }
  Cycles wcec(std::size_t i) const { return tasks_[i].wcec; }
  std::vector<Cycles> wcecs() const;
  Cycles total_wcec() const;
  Seconds deadline() const { return deadline_; }
  const FrequencyTable& cpu() const { return cpu_; }

  FrameSystem with_deadline(Seconds deadline) const;

 private:
  FrameSystem() = default;
  void validate_shape() const;

  std::vector<TaskSpec> tasks_;
  Seconds deadline_ = 0.0;
  FrequencyTable cpu_{{1.0}, {0.0}};
};

Feasibility validate_system(const FrameSystem& sys);

struct StepPoint {
  Seconds t;
  Hertz f;
  friend bool operator==(const StepPoint&, const StepPoint&) = default;
};

/// Piecewise-constant map from a task's start time to its frequency.
/// Point k holds on [points[k].t, points[k+1].t); the last point extends
/// to infinity. Only constructible through normalize().
class StepFunction {
 public:
  /// Collapses points sharing a time (the last appended wins) and merges
  /// consecutive equal frequencies. Throws InvalidInput on empty input,
  /// decreasing times, or a first point not at t = 0.
  static StepFunction normalize(std::span<const StepPoint> raw);
  static StepFunction constant(Hertz f) {
    const StepPoint p{0.0, f};
    return normalize(std::span<const StepPoint>(&p, 1));
  }

  Hertz operator()(Seconds t) const;
  std::size_t size() const { return points_.size(); }
  const std::vector<StepPoint>& points() const { return points_; }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  StepFunction() = default;
  std::vector<StepPoint> points_;
};

struct StrategySet {
  std::vector<StepFunction> funcs;
  friend bool operator==(const StrategySet&, const StrategySet&) = default;
};

/// Throws InvalidInput unless the strategy has one function per task and
/// every frequency belongs to the system's CPU.
void validate_strategy(const FrameSystem& sys, const StrategySet& strategy);

}  // namespace framedvs
