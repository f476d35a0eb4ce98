#include <omp.h>

#include <algorithm>
#include <vector>

#include "frame_kernel.hpp"
#include "framedvs/errors.hpp"
#include "framedvs/simulator.hpp"

namespace framedvs {

SimStats monte_carlo(const FrameSystem& sys, const StrategySet& strategy, const SimOptions& opts) {
  validate_strategy(sys, strategy);
  if (opts.n_frames == 0) throw InvalidInput("need at least one frame");

  const std::size_t n_blocks = (opts.n_frames + kFrameBlock - 1) / kFrameBlock;
  std::vector<detail::Accumulator> blocks(n_blocks);
  const std::size_t n_tasks = sys.size();

#pragma omp parallel
  {
    std::vector<Cycles> cycles(n_tasks);
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
      const auto block = static_cast<std::size_t>(b);
      Rng rng = block_rng(opts.seed, block);
      const std::size_t first = block * kFrameBlock;
      const std::size_t count = std::min(kFrameBlock, opts.n_frames - first);
      detail::Accumulator acc;
      for (std::size_t frame = 0; frame < count; ++frame) {
        for (std::size_t i = 0; i < n_tasks; ++i) cycles[i] = sys.task(i).dist.sample(rng);
        acc.add(detail::simulate_frame(sys, strategy, cycles.data(), opts.overheads, nullptr));
      }
      blocks[block] = acc;
    }
  }

  detail::Accumulator total;
  for (const auto& b : blocks) total.merge(b);
  return total.stats();
}

}  // namespace framedvs
