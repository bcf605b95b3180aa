#pragma once

#include <string>

#include "fbcount/events.hpp"

namespace fbc {

// A genericity violation is data, not an error: the pipeline reports it and
// refuses to emit residuals.
struct Violation {
    std::string code;  // machine-readable, e.g. "perpendicular_tangents"
    double t1 = 0, t2 = 0;
    std::string detail;
};

std::vector<Violation> check_genericity(const CurveModel& K,
                                        const std::vector<Event>& events,
                                        const Config& cfg = {});

} // namespace fbc
