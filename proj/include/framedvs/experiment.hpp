#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "framedvs/config.hpp"

namespace framedvs {

enum class SoftWcec { TrueWcec, Kappa };

struct SimulationConfig {
  std::size_t n_frames = 100'000;
  std::uint64_t seed = 1;
  bool overheads = false;
  // Soft-deadline planning: strategies are built against D * W / C^eps
  // (with kappa_i or w_i as WCEC) and simulated against the real D.
  std::optional<double> soft_eps;
  SoftWcec soft_wcec = SoftWcec::TrueWcec;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct SweepConfig {
  Seconds d_lo = 0.0;
  Seconds d_hi = 0.0;
  std::size_t n_points = 2;
  std::string baseline;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ExperimentConfig {
  FrameSystem system;
  std::vector<StrategySpec> strategies;
  SimulationConfig simulation;
  std::optional<SweepConfig> sweep;
};

ExperimentConfig experiment_from_json(const json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment(const std::filesystem::path& path);
json experiment_to_json(const ExperimentConfig& config);

/// Builds `spec` for `sys`: sufficient-mode zones when overheads are
/// simulated, plain otherwise, with the soft-deadline transform applied
/// when configured.
StrategySet build_for_simulation(const FrameSystem& sys, const StrategySpec& spec, const SimulationConfig& sim,
                                 BuildOptions opts = {});

std::vector<StrategyBuilder> make_builders(const ExperimentConfig& config, BuildOptions opts = {});

/// One Monte Carlo run per configured strategy at the system's deadline.
/// Ratios are relative to the sweep baseline when one is configured,
/// otherwise to the first strategy.
std::vector<NamedStats> run_simulation(const ExperimentConfig& config);

/// Deadline sweep; strategies are built best-effort so deadlines below
/// the feasible range still run (everything at f_M).
SweepTable run_sweep(const ExperimentConfig& config);

}  // namespace framedvs
