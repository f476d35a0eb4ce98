#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "framedvs/core.hpp"

namespace framedvs {

enum class OverheadMode { Plain, Necessary, Sufficient };

/// Latest safe start times z_1..z_{N+1} (0-based here: z[0]..z[N], with
/// z[N] = D). A task started after z[i] can no longer be guaranteed.
///
/// `switch_allowance` is the per-job switch time charged by this mode
/// (0, S_T^M or the worst job switch). Each task's own switch is paid out
/// of its window, so the schedulability limit targets
/// horizon(i) = z[i+1] - switch_allowance.
struct DangerZones {
  std::vector<Seconds> z;
  OverheadMode mode = OverheadMode::Plain;
  Seconds switch_allowance = 0.0;

  std::size_t tasks() const { return z.size() - 1; }
  Seconds horizon(std::size_t i) const { return z[i + 1] - switch_allowance; }
};

DangerZones danger_zones(const FrameSystem& sys);
DangerZones danger_zones(const FrameSystem& sys, OverheadMode mode);
/// Zones for an explicit WCEC vector (used by prefix rechecks).
DangerZones danger_zones(std::span<const Cycles> wcecs, Seconds deadline, const FrequencyTable& cpu,
                         OverheadMode mode);

/// Schedulability limit L_i(t) = w_i / (horizon_i - t). Returns f_M
/// exactly at t = z_i; throws Infeasible for t >= horizon_i.
Hertz limit(const FrameSystem& sys, const DangerZones& zones, std::size_t i, Seconds t);

/// Latest start at which frequency f still satisfies the limit:
/// horizon_i - w_i / f.
Seconds limit_inverse(Cycles wcec, const DangerZones& zones, std::size_t i, Hertz f);

struct Violation {
  std::size_t task;  // 0-based
  std::size_t step;  // 0-based index of the offending step
  Hertz required;
  Hertz provided;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct CheckReport {
  bool schedulable = true;
  std::optional<Violation> violation;
};

/// Step-wise schedulability check. Scans tasks N..1 and steps in order;
/// each step that starts no later than z_i must stay above the limit up
/// to the next step's start (clamped to z_i), and the step covering z_i
/// must run at f_M. Reports the first violation in that order.
CheckReport check(const FrameSystem& sys, const StrategySet& strategy, const DangerZones& zones);

/// Re-runs the check on tasks 1..i+1 after task i's WCEC changed to
/// `new_wcec`. Later tasks' zones do not depend on w_i.
CheckReport recheck_prefix(const FrameSystem& sys, const StrategySet& strategy, OverheadMode mode,
                           std::size_t i, Cycles new_wcec);

}  // namespace framedvs
