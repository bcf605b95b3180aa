#pragma once

#include "fbcount/events.hpp"

namespace fbc {

// Type labels per the six singularity classes.  Each function returns 1 or 2
// and throws on genericity failures (never guesses).

int classify_crossing(const CurveModel& K, const Event& e, const Config& cfg = {});
int classify_double_supporting(const CurveModel& K, const Event& e, const Config& cfg = {});
int classify_antipodal_pair(const CurveModel& K, const Event& e, const Config& cfg = {});
int classify_normal_tangent_pair(const CurveModel& K, const Event& e, const Config& cfg = {});

// Labels every classifiable event in place (Inflection and Cusp keep label 0
// and the cusp's verified type respectively).  Throws on the first failure.
void classify_all(const CurveModel& K, std::vector<Event>& events, const Config& cfg = {});

// Sector test shared by crossing classification and the augmented-model
// bent-geodesic crossings: four local branch segments given as in-plane
// angles, two tangent-line angles; returns 1 if the two acute sectors each
// contain one segment, 2 if one contains two.
int sector_label(const std::array<double, 4>& segment_angles, double line1_angle,
                 double line2_angle, double ambiguity_margin);

} // namespace fbc
