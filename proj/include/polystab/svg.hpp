#pragma once

#include <iosfwd>
#include <string>

#include "polystab/sweeps.hpp"

namespace polystab {

/// Minimal log-log line chart of a sweep as a standalone SVG. Non-finite and
/// non-positive samples are dropped from the polyline.
void write_svg_plot(std::ostream& os, const SweepSamples& samples, const std::string& title);

}  // namespace polystab
