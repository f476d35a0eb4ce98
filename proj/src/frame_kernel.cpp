#include "frame_kernel.hpp"

#include <random>
#include <string>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace detail {

FrameTotals simulate_frame(const FrameSystem& sys, const StrategySet& strategy, const Cycles* cycles,
                           bool overheads, Seconds* finish) {
  const auto& cpu = sys.cpu();
  FrameTotals out;
  Seconds t = 0.0;
  Hertz prev = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Hertz f = strategy.funcs[i](t);
    const std::size_t j = *cpu.index_of(f);
    if (i > 0) {
      if (f != prev) {
        ++out.changes;
        if (overheads) {
          out.energy += cpu.switch_energy(prev, f);
          const Seconds pen = cpu.switch_penalty(prev, f);
          t += pen;
          out.switch_time += pen;
        }
      } else if (overheads) {
        const Seconds pen = cpu.same_speed_switch_table()[j];
        t += pen;
        out.switch_time += pen;
      }
    }
    const Seconds exec = static_cast<double>(cycles[i]) / f;
    out.energy += cpu.power(j) * exec;
    t += exec;
    if (finish) finish[i] = t;
    prev = f;
  }
  out.end = t;
  out.missed = t > sys.deadline() + kTimeTolerance;
  return out;
}

}  // namespace detail

FrameResult run_frame(const FrameSystem& sys, const StrategySet& strategy, std::span<const Cycles> cycles,
                      bool overheads) {
  validate_strategy(sys, strategy);
  if (cycles.size() != sys.size()) throw InvalidInput("cycle vector length differs from task count");
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (cycles[i] < 0) throw InvalidInput("cycle counts must be nonnegative");
    if (cycles[i] > sys.wcec(i))
      throw InvalidInput("task " + std::to_string(i + 1) + " uses more cycles than its WCEC");
  }
  FrameResult r;
  r.finish_times.resize(sys.size());
  const auto totals = detail::simulate_frame(sys, strategy, cycles.data(), overheads, r.finish_times.data());
  r.energy = totals.energy;
  r.switch_time_total = totals.switch_time;
  r.frequency_changes = totals.changes;
  r.missed = totals.missed;
  return r;
}

Rng block_rng(std::uint64_t seed, std::size_t block) {
  const auto b = static_cast<std::uint64_t>(block);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

}  // namespace framedvs
