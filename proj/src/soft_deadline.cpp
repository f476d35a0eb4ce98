#include "framedvs/soft_deadline.hpp"

#include "framedvs/errors.hpp"

namespace framedvs {

SoftDeadlineResult soft_deadline(const FrameSystem& sys, double eps, std::size_t cap) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0, 1)");
  SoftDeadlineResult out;
  std::vector<CycleDistribution> dists;
  dists.reserve(sys.size());
  for (const auto& task : sys.tasks()) {
    out.kappa.push_back(task.dist.percentile(eps));
    dists.push_back(task.dist);
  }
  out.frame_wcec = sys.total_wcec();

  const auto total = convolve(dists, cap).masses(cap);
  out.frame_percentile = total.back().value;
  double below = 0.0;  // P[C < masses[k].value]
  for (const auto& m : total) {
    if (below > 1.0 - eps) {
      out.frame_percentile = m.value;
      break;
    }
    below += m.prob;
  }
  out.adjusted_deadline =
      sys.deadline() * static_cast<double>(out.frame_wcec) / static_cast<double>(out.frame_percentile);
  return out;
}

}  // namespace framedvs
