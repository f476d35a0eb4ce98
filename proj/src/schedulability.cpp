#include "framedvs/schedulability.hpp"

#include <limits>
#include <string>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

Seconds allowance(const FrequencyTable& cpu, OverheadMode mode) {
  switch (mode) {
    case OverheadMode::Plain: return 0.0;
    case OverheadMode::Necessary: return cpu.top_same_speed_switch();
    case OverheadMode::Sufficient: return cpu.worst_job_switch();
  }
  return 0.0;
}

Hertz required_at(Cycles wcec, const DangerZones& zones, std::size_t i, Seconds t) {
  const Seconds room = zones.horizon(i) - t;
  return room > 0.0 ? static_cast<double>(wcec) / room : std::numeric_limits<double>::infinity();
}

CheckReport check_tasks(std::span<const Cycles> wcecs, const FrequencyTable& cpu,
                        const StrategySet& strategy, const DangerZones& zones, std::size_t last_task) {
  const Hertz f_max = cpu.max();
  for (std::size_t i = last_task + 1; i-- > 0;) {
    const auto& pts = strategy.funcs[i].points();
    const Seconds zi = zones.z[i];
    const Cycles w = wcecs[i];

    // Every start is already inside the danger zone.
    if (zi < 0.0) {
      return {false, Violation{i, 0, required_at(w, zones, i, 0.0), pts.front().f}};
    }
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const StepPoint& prev = pts[k - 1];
      if (prev.t > zi) break;
      if (prev.f == f_max) continue;
      const Seconds end = pts[k].t;
      if (end >= zi) return {false, Violation{i, k - 1, f_max, prev.f}};
      if (end > limit_inverse(w, zones, i, prev.f) + kTimeTolerance)
        return {false, Violation{i, k - 1, required_at(w, zones, i, end), prev.f}};
    }
    const StepPoint& last = pts.back();
    if (last.t <= zi && last.f != f_max) return {false, Violation{i, pts.size() - 1, f_max, last.f}};
  }
  return {};
}

}  // namespace

DangerZones danger_zones(std::span<const Cycles> wcecs, Seconds deadline, const FrequencyTable& cpu,
                         OverheadMode mode) {
  const std::size_t n = wcecs.size();
  DangerZones zones;
  zones.mode = mode;
  zones.switch_allowance = allowance(cpu, mode);
  zones.z.assign(n + 1, deadline);
  double suffix = 0.0;  // exact: integer cycle counts well below 2^53
  for (std::size_t i = n; i-- > 0;) {
    suffix += static_cast<double>(wcecs[i]);
    zones.z[i] = deadline - suffix / cpu.max() - static_cast<double>(n - i) * zones.switch_allowance;
  }
  return zones;
}

DangerZones danger_zones(const FrameSystem& sys, OverheadMode mode) {
  const auto w = sys.wcecs();
  return danger_zones(w, sys.deadline(), sys.cpu(), mode);
}

DangerZones danger_zones(const FrameSystem& sys) { return danger_zones(sys, OverheadMode::Plain); }

Hertz limit(const FrameSystem& sys, const DangerZones& zones, std::size_t i, Seconds t) {
  if (i >= sys.size()) throw InvalidInput("task index out of range");
  if (t == zones.z[i]) return sys.cpu().max();
  if (t >= zones.horizon(i)) throw Infeasible("start time is past the feasibility horizon");
  return static_cast<double>(sys.wcec(i)) / (zones.horizon(i) - t);
}

Seconds limit_inverse(Cycles wcec, const DangerZones& zones, std::size_t i, Hertz f) {
  return zones.horizon(i) - static_cast<double>(wcec) / f;
}

CheckReport check(const FrameSystem& sys, const StrategySet& strategy, const DangerZones& zones) {
  validate_strategy(sys, strategy);
  if (zones.tasks() != sys.size()) throw InvalidInput("danger zones do not match the system");
  const auto w = sys.wcecs();
  return check_tasks(w, sys.cpu(), strategy, zones, sys.size() - 1);
}

CheckReport recheck_prefix(const FrameSystem& sys, const StrategySet& strategy, OverheadMode mode,
                           std::size_t i, Cycles new_wcec) {
  if (i >= sys.size()) throw InvalidInput("task index out of range");
  if (new_wcec <= 0) throw InvalidInput("new WCEC must be positive");
  validate_strategy(sys, strategy);
  auto w = sys.wcecs();
  w[i] = new_wcec;
  const auto zones = danger_zones(w, sys.deadline(), sys.cpu(), mode);
  return check_tasks(w, sys.cpu(), strategy, zones, i);
}

}  // namespace framedvs
