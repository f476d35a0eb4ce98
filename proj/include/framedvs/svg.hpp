#pragma once

#include <iosfwd>

#include "framedvs/simulator.hpp"

namespace framedvs {

/// Static line chart of energy ratio against deadline, one polyline per
/// strategy. Missing cells break the line.
void write_sweep_svg(std::ostream& out, const SweepTable& table);

}  // namespace framedvs
