#pragma once

#include "fbcount/curve.hpp"

namespace fbc {

// Brute-force counts with no Newton refinement and no duality shortcut for
// crossings: dense-polyline segment intersection (spatial hash), dual
// polyline self-intersection for bitangents, k_g sign changes, and dense
// two-curve proximity sweeps with recursive cell subdivision for the pair
// conditions.  Deliberately independent of the detection pipeline.
struct OracleCounts {
    int crossings = 0;
    int bitangents = 0;  // tangent-tangent double supporting geodesics
    int inflections = 0;
    int cusps = 0;
    int antipodal = 0;       // ordered pairs
    int normal_tangent = 0;  // ordered pairs

    bool operator==(const OracleCounts&) const = default;
};

// Single run at the given polyline resolution.
OracleCounts oracle_counts_once(const CurveModel& K, int resolution, const Config& cfg = {});

// Runs at resolution and 2x resolution; ResolutionTooLow if they disagree.
OracleCounts oracle_counts(const CurveModel& K, int resolution, const Config& cfg = {});

} // namespace fbc
