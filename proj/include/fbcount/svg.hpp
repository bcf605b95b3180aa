#pragma once

#include <string>
#include <vector>

#include "fbcount/events.hpp"

namespace fbc {

// Disk-model rendering: upper-hemisphere representative, orthographic (x,y)
// projection onto the unit disk; arcs crossing the boundary are split and
// re-entered antipodally.  Events color-coded by kind, type 1 filled / type 2
// hollow.  Deterministic byte-for-byte for a fixed input.
std::string render_svg(const CurveModel& K, const std::vector<Event>& events,
                       int size = 800);

} // namespace fbc
