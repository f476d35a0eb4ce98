#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framedvs/core.hpp"

namespace framedvs {

struct FrameResult {
  std::vector<Seconds> finish_times;
  Joules energy = 0.0;
  Seconds switch_time_total = 0.0;
  std::size_t frequency_changes = 0;
  bool missed = false;
};

struct SimStats {
  std::size_t frames = 0;
  Joules mean_energy = 0.0;
  Joules energy_stderr = 0.0;
  double miss_rate = 0.0;
  double mean_frequency_changes = 0.0;
  Seconds mean_switch_time = 0.0;
  Seconds mean_busy_time = 0.0;  // time from 0 to the end of T_N

  /// Share of busy time spent switching jobs.
  double overhead_share() const { return mean_busy_time > 0.0 ? mean_switch_time / mean_busy_time : 0.0; }

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

struct SimOptions {
  std::size_t n_frames = 100'000;
  std::uint64_t seed = 1;
  bool overheads = false;
};

/// Runs one expedient frame: each task starts when its predecessor ends,
/// reads its frequency from S_i at that instant, and (with overheads on)
/// first pays P_T for a frequency change or S_T otherwise. The first task
/// pays nothing. Switching costs time; its energy comes from the CPU's
/// switch-energy table (zero by default).
FrameResult run_frame(const FrameSystem& sys, const StrategySet& strategy, std::span<const Cycles> cycles,
                      bool overheads);

/// Monte Carlo over independent frames, parallel with OpenMP. Frames are
/// grouped in fixed blocks, each with its own generator seeded from
/// (seed, block index), and block statistics are merged in block order:
/// results are bit-identical for any thread count.
SimStats monte_carlo(const FrameSystem& sys, const StrategySet& strategy, const SimOptions& opts);

/// Single-threaded reference for monte_carlo, built on run_frame.
SimStats monte_carlo_serial(const FrameSystem& sys, const StrategySet& strategy, const SimOptions& opts);

/// Frames per generator block.
inline constexpr std::size_t kFrameBlock = 4096;

/// Generator for one block of frames.
Rng block_rng(std::uint64_t seed, std::size_t block);

struct ExactStats {
  SimStats stats;       // frames = number of enumerated outcomes, stderr 0
  double total_mass = 0.0;
};

/// Expectation over every combination of task cycle counts.
ExactStats exact_expectation(const FrameSystem& sys, const StrategySet& strategy, bool overheads,
                             std::size_t cap = 1'000'000);

struct WorstCaseReport {
  std::vector<Seconds> tau;                  // worst finish per task
  std::vector<std::vector<Cycles>> witness;  // cycles of T_1..T_i attaining tau_i
};

/// Exact worst finishing times under strict expedience. Propagates every
/// reachable start time (with the frequency the predecessor ran at) task
/// by task; T_1 starts at 0 and supports are finite, so the reachable
/// sets are finite. Throws CapExceeded past `cap` distinct states.
WorstCaseReport worst_finish_oracle(const FrameSystem& sys, const StrategySet& strategy, bool overheads,
                                    std::size_t cap = 1'000'000);

struct StrategyBuilder {
  std::string name;
  std::function<StrategySet(const FrameSystem&)> build;
};

struct SweepGrid {
  Seconds d_lo = 0.0;
  Seconds d_hi = 0.0;
  std::size_t n_points = 2;

  std::vector<Seconds> deadlines() const;
};

struct SweepCell {
  Seconds deadline = 0.0;
  std::string strategy;
  std::optional<SimStats> stats;  // empty when the builder failed
  std::optional<double> ratio;    // energy relative to the baseline
  std::string note;               // builder error, if any
};

struct SweepTable {
  std::string baseline;
  std::vector<Seconds> deadlines;
  std::vector<std::string> strategies;
  std::vector<SweepCell> cells;  // deadline-major

  const SweepCell& at(std::size_t deadline_idx, std::size_t strategy_idx) const {
    return cells[deadline_idx * strategies.size() + strategy_idx];
  }
};

/// For each deadline on the grid, rebuilds every strategy against the
/// system at that deadline and simulates it with the same seed (common
/// random numbers). Builder failures become empty cells.
SweepTable sweep_deadlines(const FrameSystem& sys, const std::vector<StrategyBuilder>& builders,
                           const SweepGrid& grid, const SimOptions& sim, const std::string& baseline);

}  // namespace framedvs
