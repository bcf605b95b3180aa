#include "fbcount/projective.hpp"

#include <algorithm>
#include <cmath>

namespace fbc {

const char* err_name(Err e) {
    switch (e) {
        case Err::DegeneratePair: return "DegeneratePair";
        case Err::PointNotOnGeodesic: return "PointNotOnGeodesic";
        case Err::OnBoundary: return "OnBoundary";
        case Err::TooFewSamples: return "TooFewSamples";
        case Err::GapTooLarge: return "GapTooLarge";
        case Err::NotClosed: return "NotClosed";
        case Err::EmptyInput: return "EmptyInput";
        case Err::AtCusp: return "AtCusp";
        case Err::AtInflection: return "AtInflection";
        case Err::RefinementDiverged: return "RefinementDiverged";
        case Err::TangentialContact: return "TangentialContact";
        case Err::DoubleZero: return "DoubleZero";
        case Err::Type2Cusp: return "Type2Cusp";
        case Err::VelocityNotZero: return "VelocityNotZero";
        case Err::NearHalfPi: return "NearHalfPi";
        case Err::SectorAmbiguous: return "SectorAmbiguous";
        case Err::MixedSideAtTangency: return "MixedSideAtTangency";
        case Err::CenterHit: return "CenterHit";
        case Err::DirectionOnAxis: return "DirectionOnAxis";
        case Err::EventAtParameter: return "EventAtParameter";
        case Err::UnclassifiedEvent: return "UnclassifiedEvent";
        case Err::PreconditionViolated: return "PreconditionViolated";
        case Err::BendUnstable: return "BendUnstable";
        case Err::ResolutionTooLow: return "ResolutionTooLow";
        case Err::BadSpec: return "BadSpec";
    }
    return "UnknownError";
}

Vec3 canonical_rep(const Vec3& v) {
    Vec3 u = v.normalized();
    int imax = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(u[i]) > std::abs(u[imax])) imax = i;
    if (u[imax] < 0) u = -u;
    return u;
}

ProjectivePoint ProjectivePoint::canon(const Vec3& v) { return {canonical_rep(v)}; }

double proj_distance(const Vec3& a, const Vec3& b) {
    double c = std::abs(a.normalized().dot(b.normalized()));
    return std::acos(std::min(1.0, c));
}

double proj_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    return proj_distance(p.rep, q.rep);
}

OrientedGeodesic dualize_point(const ProjectivePoint& p) { return {p.rep}; }

ProjectivePoint dualize_geodesic(const OrientedGeodesic& g) {
    return ProjectivePoint::canon(g.pole);
}

OrientedGeodesic geodesic_through(const ProjectivePoint& p, const ProjectivePoint& q,
                                  const Config& cfg) {
    if (proj_distance(p, q) <= cfg.tol_sep)
        fail(Err::DegeneratePair, "points coincide within tol_sep");
    return {p.rep.cross(q.rep).normalized()};
}

ProjectivePoint point_along(const OrientedGeodesic& g, const ProjectivePoint& start,
                            double s, const Config& cfg) {
    if (std::abs(start.rep.dot(g.pole)) > 1e-10)
        fail(Err::PointNotOnGeodesic, "start point not on geodesic");
    Vec3 dir = g.pole.cross(start.rep);
    return ProjectivePoint::canon(std::cos(s) * start.rep + std::sin(s) * dir);
}

int region_class(const ProjectivePoint& x, const OrientedGeodesic& g1,
                 const OrientedGeodesic& g2, const Config& cfg) {
    double d1 = x.rep.dot(g1.pole);
    double d2 = x.rep.dot(g2.pole);
    if (std::abs(d1) <= cfg.tol_on || std::abs(d2) <= cfg.tol_on)
        fail(Err::OnBoundary, "point lies on one of the geodesics");
    return d1 * d2 > 0 ? +1 : -1;
}

} // namespace fbc
