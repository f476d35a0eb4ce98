// Serial reference for the Monte Carlo driver: one run_frame call per
// frame, same block seeding and merge order as the parallel path.

#include <algorithm>
#include <vector>

#include "frame_kernel.hpp"
#include "framedvs/errors.hpp"
#include "framedvs/simulator.hpp"

namespace framedvs {

SimStats monte_carlo_serial(const FrameSystem& sys, const StrategySet& strategy, const SimOptions& opts) {
  if (opts.n_frames == 0) throw InvalidInput("need at least one frame");
  detail::Accumulator total;
  std::vector<Cycles> cycles(sys.size());
  for (std::size_t first = 0, block = 0; first < opts.n_frames; first += kFrameBlock, ++block) {
    Rng rng = block_rng(opts.seed, block);
    detail::Accumulator acc;
    for (std::size_t frame = first; frame < std::min(first + kFrameBlock, opts.n_frames); ++frame) {
      for (std::size_t i = 0; i < sys.size(); ++i) cycles[i] = sys.task(i).dist.sample(rng);
      const FrameResult r = run_frame(sys, strategy, cycles, opts.overheads);
      detail::FrameTotals f;
      f.energy = r.energy;
      f.switch_time = r.switch_time_total;
      f.end = r.finish_times.back();
      f.changes = r.frequency_changes;
      f.missed = r.missed;
      acc.add(f);
    }
    total.merge(acc);
  }
  return total.stats();
}

}  // namespace framedvs
