#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "framedvs/core.hpp"
#include "framedvs/schedulability.hpp"

namespace framedvs {

/// A continuous-speed rule, described by when its speed for task i first
/// reaches f. Continuous rules speed up as the start time grows, so the
/// inverse is nondecreasing in f. `forward` is optional.
struct ContinuousRule {
  std::string name;
  std::function<Seconds(std::size_t task, Hertz f)> inverse;
  std::function<Hertz(std::size_t task, Seconds t)> forward;
};

struct BuildOptions {
  // Build even when z_1 < 0: every task then runs at f_M, which is what a
  // deadline sweep below the feasible range runs.
  bool best_effort = false;
};

/// Greedy worst-case strategy: each S_i is the limit rounded up to the
/// next available frequency.
StrategySet build_limit(const FrameSystem& sys, const DangerZones& zones, BuildOptions opts = {});

/// The continuous schedulability limit itself as a rule.
ContinuousRule limit_rule(const FrameSystem& sys, const DangerZones& zones);

/// DPM-S: bets the remaining tasks use their average cycles, giving the
/// speed (sum_{j>=i} avg_j) / (D - t).
ContinuousRule dpms_rule(const FrameSystem& sys);

/// PITDVS with aggressiveness factors beta_i in (0, 1] and scalar switch
/// penalty `pt`: speed w_i / (beta_i (D - pt (N - i) - t)).
ContinuousRule pitdvs_rule(const FrameSystem& sys, const std::vector<double>& beta, Seconds pt);

/// Wraps a forward-only rule, resolving its inverse by bisection on
/// [0, horizon] to precision `eps`. The forward speed must be
/// nondecreasing in t.
ContinuousRule rule_from_forward(std::string name, std::function<Hertz(std::size_t, Seconds)> forward,
                                 Seconds horizon, Seconds eps = 1e-9);

/// Discretizes a continuous rule while respecting the limit. Closest mode
/// switches to f_j once the rule reaches the midpoint (f_{j-1}+f_j)/2;
/// up mode once it exceeds f_{j-1}. Either way a step never starts later
/// than the limit allows.
StrategySet discretize(const FrameSystem& sys, const DangerZones& zones, const ContinuousRule& rule,
                       Rounding mode, BuildOptions opts = {});

enum class StrategyKind { Limit, Dpms, Pitdvs, Custom };

/// A named strategy recipe, rebuilt against whatever system it is given.
struct StrategySpec {
  std::string name;
  StrategyKind kind = StrategyKind::Limit;
  Rounding rounding = Rounding::Closest;
  std::vector<double> beta;           // PITDVS; empty means all 1
  std::optional<Seconds> pt;          // PITDVS; defaults to the CPU's P_T^M
  // Custom: per-task forward speed tables of (t, hz) points, linearly
  // interpolated and held flat outside their range.
  std::vector<std::vector<StepPoint>> forward_tables;

  friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

StrategySet build_strategy(const FrameSystem& sys, const DangerZones& zones, const StrategySpec& spec,
                           BuildOptions opts = {});

}  // namespace framedvs
