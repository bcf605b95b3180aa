#pragma once

#include <Eigen/Dense>

#include "fbcount/config.hpp"
#include "fbcount/error.hpp"

namespace fbc {

using Vec3 = Eigen::Vector3d;

// A point of RP^2 as a sign-canonicalized unit 3-vector: the coordinate of
// largest absolute value is positive (ties broken by index order).
struct ProjectivePoint {
    Vec3 rep;

    static ProjectivePoint canon(const Vec3& v);
};

// A great-circle geodesic with orientation: traversal direction at a point x
// on the geodesic is pole x x.  Reversing orientation negates the pole.
struct OrientedGeodesic {
    Vec3 pole;

    OrientedGeodesic reversed() const { return {-pole}; }
    ProjectivePoint line() const { return ProjectivePoint::canon(pole); }
};

Vec3 canonical_rep(const Vec3& v);

// Distance in RP^2, in [0, pi/2].
double proj_distance(const ProjectivePoint& p, const ProjectivePoint& q);
double proj_distance(const Vec3& a, const Vec3& b);

OrientedGeodesic dualize_point(const ProjectivePoint& p);
ProjectivePoint dualize_geodesic(const OrientedGeodesic& g);

OrientedGeodesic geodesic_through(const ProjectivePoint& p, const ProjectivePoint& q,
                                  const Config& cfg = {});

// Arc-length advance from `start` (must lie on g) by s radians in g's orientation.
ProjectivePoint point_along(const OrientedGeodesic& g, const ProjectivePoint& start,
                            double s, const Config& cfg = {});

// Which of the two regions cut out by g1 and g2 contains x, as the sign of
// (x . pole1)(x . pole2).  Well defined on RP^2 for fixed signed poles.
int region_class(const ProjectivePoint& x, const OrientedGeodesic& g1,
                 const OrientedGeodesic& g2, const Config& cfg = {});

} // namespace fbc
