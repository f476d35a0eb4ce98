#include "framedvs/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// True when the frame cannot fit at all; best effort then runs flat out.
bool never_fits(const DangerZones& zones, const BuildOptions& opts) {
  if (zones.z.front() >= 0.0) return false;
  if (!opts.best_effort) throw Infeasible("infeasible: the frame cannot fit even at maximum speed");
  return true;
}

StrategySet all_max(const FrameSystem& sys) {
  return {std::vector<StepFunction>(sys.size(), StepFunction::constant(sys.cpu().max()))};
}

Hertz interpolate(const std::vector<StepPoint>& table, Seconds t) {
  if (t <= table.front().t) return table.front().f;
  if (t >= table.back().t) return table.back().f;
  auto it = std::upper_bound(table.begin(), table.end(), t,
                             [](Seconds v, const StepPoint& p) { return v < p.t; });
  const StepPoint& b = *it;
  const StepPoint& a = *std::prev(it);
  return a.f + (b.f - a.f) * (t - a.t) / (b.t - a.t);
}

}  // namespace

StrategySet build_limit(const FrameSystem& sys, const DangerZones& zones, BuildOptions opts) {
  if (never_fits(zones, opts)) return all_max(sys);
  const auto& cpu = sys.cpu();
  StrategySet out;
  out.funcs.reserve(sys.size());
  std::vector<StepPoint> raw;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    raw.clear();
    raw.push_back({0.0, cpu.freq(0)});
    for (std::size_t j = 1; j < cpu.size(); ++j) {
      const Seconds t = limit_inverse(sys.wcec(i), zones, i, cpu.freq(j - 1));
      raw.push_back({std::max(0.0, t), cpu.freq(j)});
    }
    out.funcs.push_back(StepFunction::normalize(raw));
  }
  return out;
}

ContinuousRule limit_rule(const FrameSystem& sys, const DangerZones& zones) {
  auto w = sys.wcecs();
  return {"limit",
          [w, zones](std::size_t i, Hertz f) { return limit_inverse(w[i], zones, i, f); },
          [w, zones](std::size_t i, Seconds t) {
            const Seconds room = zones.horizon(i) - t;
            return room > 0.0 ? static_cast<double>(w[i]) / room : kInf;
          }};
}

ContinuousRule dpms_rule(const FrameSystem& sys) {
  const std::size_t n = sys.size();
  // Expected remaining work from task i onward.
  std::vector<double> remaining(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += sys.task(i).dist.mean();
    remaining[i] = acc;
  }
  const Seconds d = sys.deadline();
  return {"dpms",
          [remaining, d](std::size_t i, Hertz f) { return d - remaining[i] / f; },
          [remaining, d](std::size_t i, Seconds t) { return t < d ? remaining[i] / (d - t) : kInf; }};
}

ContinuousRule pitdvs_rule(const FrameSystem& sys, const std::vector<double>& beta, Seconds pt) {
  const std::size_t n = sys.size();
  std::vector<double> b = beta.empty() ? std::vector<double>(n, 1.0) : beta;
  if (b.size() != n) throw InvalidInput("beta vector length differs from task count");
  for (double v : b)
    if (!(v > 0.0 && v <= 1.0)) throw InvalidInput("beta values must lie in (0, 1]");
  if (!(pt >= 0.0)) throw InvalidInput("switch penalty must be >= 0");

  std::vector<Seconds> horizon(n);
  std::vector<double> work(n);
  for (std::size_t i = 0; i < n; ++i) {
    horizon[i] = sys.deadline() - pt * static_cast<double>(n - 1 - i);
    if (!(horizon[i] > 0.0)) throw Infeasible("infeasible parameters: nonpositive PITDVS horizon");
    work[i] = static_cast<double>(sys.wcec(i)) / b[i];
  }
  return {"pitdvs",
          [horizon, work](std::size_t i, Hertz f) { return horizon[i] - work[i] / f; },
          [horizon, work](std::size_t i, Seconds t) {
            return t < horizon[i] ? work[i] / (horizon[i] - t) : kInf;
          }};
}

ContinuousRule rule_from_forward(std::string name, std::function<Hertz(std::size_t, Seconds)> forward,
                                 Seconds horizon, Seconds eps) {
  auto inverse = [forward, horizon, eps](std::size_t i, Hertz f) -> Seconds {
    if (forward(i, 0.0) >= f) return 0.0;
    if (forward(i, horizon) < f) return kInf;
    Seconds lo = 0.0;
    Seconds hi = horizon;
    while (hi - lo > eps) {
      const Seconds mid = 0.5 * (lo + hi);
      if (forward(i, mid) >= f) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };
  return {std::move(name), std::move(inverse), std::move(forward)};
}

StrategySet discretize(const FrameSystem& sys, const DangerZones& zones, const ContinuousRule& rule,
                       Rounding mode, BuildOptions opts) {
  if (never_fits(zones, opts)) return all_max(sys);
  const auto& cpu = sys.cpu();
  const std::size_t m = cpu.size();
  StrategySet out;
  out.funcs.reserve(sys.size());
  std::vector<Seconds> starts(m, 0.0);
  std::vector<StepPoint> raw;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      const Hertz lower = cpu.freq(j - 1);
      const Hertz trigger = mode == Rounding::Closest ? 0.5 * (lower + cpu.freq(j)) : lower;
      Seconds t = rule.inverse(i, trigger);
      if (std::isnan(t)) throw InvalidInput("continuous rule '" + rule.name + "' returned NaN");
      starts[j] = std::min(t, limit_inverse(sys.wcec(i), zones, i, lower));
    }
    // Reaching f_{j+1} implies having reached f_j.
    for (std::size_t j = m - 1; j-- > 1;) starts[j] = std::min(starts[j], starts[j + 1]);

    raw.clear();
    raw.push_back({0.0, cpu.freq(0)});
    for (std::size_t j = 1; j < m; ++j) raw.push_back({std::max(0.0, starts[j]), cpu.freq(j)});
    out.funcs.push_back(StepFunction::normalize(raw));
  }
  return out;
}

StrategySet build_strategy(const FrameSystem& sys, const DangerZones& zones, const StrategySpec& spec,
                           BuildOptions opts) {
  switch (spec.kind) {
    case StrategyKind::Limit:
      return build_limit(sys, zones, opts);
    case StrategyKind::Dpms:
      return discretize(sys, zones, dpms_rule(sys), spec.rounding, opts);
    case StrategyKind::Pitdvs:
      return discretize(sys, zones, pitdvs_rule(sys, spec.beta, spec.pt.value_or(sys.cpu().max_switch_penalty())),
                        spec.rounding, opts);
    case StrategyKind::Custom: {
      const auto& tables = spec.forward_tables;
      if (tables.size() != 1 && tables.size() != sys.size())
        throw InvalidInput("custom strategy needs one forward table or one per task");
      for (const auto& table : tables) {
        if (table.empty()) throw InvalidInput("custom forward table is empty");
        for (std::size_t k = 1; k < table.size(); ++k)
          if (!(table[k].t > table[k - 1].t) || table[k].f < table[k - 1].f)
            throw InvalidInput("custom forward table must have increasing times and nondecreasing speeds");
      }
      auto forward = [tables](std::size_t i, Seconds t) {
        return interpolate(tables.size() == 1 ? tables.front() : tables[i], t);
      };
      return discretize(sys, zones, rule_from_forward(spec.name, forward, sys.deadline()), spec.rounding,
                        opts);
    }
  }
  throw InvalidInput("unknown strategy kind");
}

}  // namespace framedvs
