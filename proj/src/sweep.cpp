#include <algorithm>

#include "framedvs/errors.hpp"
#include "framedvs/simulator.hpp"

namespace framedvs {

std::vector<Seconds> SweepGrid::deadlines() const {
  if (n_points == 0) throw InvalidInput("sweep needs at least one point");
  if (n_points == 1) return {d_lo};
  std::vector<Seconds> out(n_points);
  const double step = (d_hi - d_lo) / static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) out[k] = d_lo + step * static_cast<double>(k);
  out.back() = d_hi;
  return out;
}

SweepTable sweep_deadlines(const FrameSystem& sys, const std::vector<StrategyBuilder>& builders,
                           const SweepGrid& grid, const SimOptions& sim, const std::string& baseline) {
  if (!(grid.d_lo > 0.0) || !(grid.d_lo < grid.d_hi)) throw InvalidInput("sweep needs 0 < d_lo < d_hi");
  if (builders.empty()) throw InvalidInput("sweep needs at least one strategy");

  SweepTable table;
  table.baseline = baseline;
  table.deadlines = grid.deadlines();
  std::size_t base_idx = builders.size();
  for (std::size_t s = 0; s < builders.size(); ++s) {
    table.strategies.push_back(builders[s].name);
    if (builders[s].name == baseline) base_idx = s;
  }
  if (base_idx == builders.size()) throw InvalidInput("baseline '" + baseline + "' is not a configured strategy");

  for (Seconds d : table.deadlines) {
    const FrameSystem at = sys.with_deadline(d);
    const std::size_t row = table.cells.size();
    for (const auto& builder : builders) {
      SweepCell cell;
      cell.deadline = d;
      cell.strategy = builder.name;
      try {
        const StrategySet strategy = builder.build(at);
        cell.stats = monte_carlo(at, strategy, sim);
      } catch (const Infeasible& e) {
        cell.note = e.what();
      }
      table.cells.push_back(std::move(cell));
    }
    const auto& base = table.cells[row + base_idx];
    for (std::size_t s = 0; s < builders.size(); ++s) {
      auto& cell = table.cells[row + s];
      if (cell.stats && base.stats && base.stats->mean_energy > 0.0)
        cell.ratio = cell.stats->mean_energy / base.stats->mean_energy;
    }
  }
  return table;
}

}  // namespace framedvs
