#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frame_kernel.hpp"
#include "framedvs/errors.hpp"
#include "framedvs/simulator.hpp"

namespace framedvs {

namespace {

std::vector<std::vector<Mass>> task_masses(const FrameSystem& sys, std::size_t cap) {
  std::vector<std::vector<Mass>> out;
  out.reserve(sys.size());
  for (const auto& task : sys.tasks()) out.push_back(task.dist.masses(cap));
  return out;
}

}  // namespace

ExactStats exact_expectation(const FrameSystem& sys, const StrategySet& strategy, bool overheads,
                             std::size_t cap) {
  validate_strategy(sys, strategy);
  const auto masses = task_masses(sys, cap);
  std::size_t outcomes = 1;
  for (const auto& m : masses) {
    if (outcomes > cap / m.size())
      throw CapExceeded("outcome space exceeds cap " + std::to_string(cap));
    outcomes *= m.size();
  }

  const std::size_t n = sys.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<Cycles> cycles(n);
  double energy = 0.0, miss = 0.0, changes = 0.0, switching = 0.0, busy = 0.0, mass = 0.0;
  for (std::size_t count = 0; count < outcomes; ++count) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      cycles[i] = masses[i][digit[i]].value;
      p *= masses[i][digit[i]].prob;
    }
    const auto f = detail::simulate_frame(sys, strategy, cycles.data(), overheads, nullptr);
    energy += p * f.energy;
    miss += f.missed ? p : 0.0;
    changes += p * static_cast<double>(f.changes);
    switching += p * f.switch_time;
    busy += p * f.end;
    mass += p;
    // Mixed-radix increment, last task fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < masses[i].size()) break;
      digit[i] = 0;
    }
  }

  ExactStats out;
  out.total_mass = mass;
  out.stats.frames = outcomes;
  out.stats.mean_energy = energy;
  out.stats.miss_rate = miss;
  out.stats.mean_frequency_changes = changes;
  out.stats.mean_switch_time = switching;
  out.stats.mean_busy_time = busy;
  return out;
}

WorstCaseReport worst_finish_oracle(const FrameSystem& sys, const StrategySet& strategy, bool overheads,
                                    std::size_t cap) {
  validate_strategy(sys, strategy);
  const auto masses = task_masses(sys, cap);
  const auto& cpu = sys.cpu();

  // Reachable (start time, predecessor frequency) states; 0 Hz marks the
  // frame start, which pays no switch.
  using Key = std::pair<Seconds, Hertz>;
  std::map<Key, std::vector<Cycles>> states;
  states.emplace(Key{0.0, 0.0}, std::vector<Cycles>{});

  WorstCaseReport report;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    std::map<Key, std::vector<Cycles>> next;
    Seconds worst = -std::numeric_limits<double>::infinity();
    std::vector<Cycles> witness;
    for (const auto& [key, path] : states) {
      const auto [start, prev] = key;
      const Hertz f = strategy.funcs[i](start);
      Seconds begin = start;
      if (overheads && prev > 0.0)
        begin += f != prev ? cpu.switch_penalty(prev, f) : cpu.same_speed_switch(f);
      for (const auto& m : masses[i]) {
        const Seconds end = begin + static_cast<double>(m.value) / f;
        auto [it, inserted] = next.try_emplace(Key{end, f});
        if (inserted) {
          it->second = path;
          it->second.push_back(m.value);
        }
        if (end > worst) {
          worst = end;
          witness = it->second;
        }
      }
      if (next.size() > cap)
        throw CapExceeded("reachable state set exceeds cap " + std::to_string(cap));
    }
    report.tau.push_back(worst);
    report.witness.push_back(std::move(witness));
    states = std::move(next);
  }
  return report;
}

}  // namespace framedvs
