#pragma once

#include <cstddef>
#include <vector>

#include "framedvs/core.hpp"

namespace framedvs {

struct SoftDeadlineResult {
  std::vector<Cycles> kappa;      // per-task percentiles kappa_i(eps)
  Cycles frame_wcec = 0;          // W = sum of w_i
  Cycles frame_percentile = 0;    // C^eps
  Seconds adjusted_deadline = 0;  // D * W / C^eps
};

/// Soft-deadline transform. C^eps is the smallest support value c of the
/// frame total with P[C < c] > 1 - eps, or the support maximum when no
/// value qualifies.
SoftDeadlineResult soft_deadline(const FrameSystem& sys, double eps, std::size_t cap = 10'000'000);

}  // namespace framedvs
