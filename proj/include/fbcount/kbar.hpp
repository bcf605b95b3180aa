#pragma once

#include "fbcount/identities.hpp"

namespace fbc {

// One attached inflection geodesic: the tangent geodesic at an inflection of
// the base curve, carrying the two-sided normal-direction convention.  The
// normal direction at a point x on the geodesic is sign(x . (s * tangent)) *
// pole; it flips across the anchor inflection point.
struct InflectionGeodesic {
    double t_anchor = 0;
    Vec3 pole;     // unit plane normal of the geodesic
    Vec3 tangent;  // unit curve tangent at the anchor (lift as evaluated)
    int s = 0;     // +-1, fixes which side of the anchor carries +pole

    Vec3 normal_at(const Vec3& x) const {
        return (x.dot(s * tangent) >= 0 ? 1.0 : -1.0) * pole;
    }
};

struct AugmentedModel {
    CurveModel base;
    std::vector<InflectionGeodesic> geodesics;
};

AugmentedModel build_kbar(const CurveModel& K, const Config& cfg = {});

// Counts for the augmented curve: base counts plus crossings of the base with
// each inflection geodesic, crossings between geodesic pairs (both
// type-classified by bending each geodesic slightly toward its normal
// direction, with a stability sweep over kappa_bend), and normal-tangent
// pairs whose first point lies on an inflection geodesic (rho = pi/2 there).
// base_events must already be classified.
CountReport kbar_counts(const AugmentedModel& A, const std::vector<Event>& base_events,
                        const Config& cfg = {});

} // namespace fbc
