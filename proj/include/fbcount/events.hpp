#pragma once

#include <vector>

#include "fbcount/curve.hpp"

namespace fbc {

enum class EventKind {
    Crossing,
    DoubleSupporting,
    Inflection,
    Cusp,
    AntipodalPair,
    NormalTangentPair,
};

enum class SupportKind { None, TangentTangent, TangentCusp, CuspCusp };

const char* kind_name(EventKind k);
const char* support_name(SupportKind k);

// A detected singularity.  One-parameter kinds use t1 only.  Crossing and
// DoubleSupporting carry an unordered pair stored t1 < t2; AntipodalPair and
// NormalTangentPair are ordered (t1 = p, t2 = q).
struct Event {
    EventKind kind = EventKind::Crossing;
    SupportKind subkind = SupportKind::None;
    double t1 = 0, t2 = 0;
    int type_label = 0;  // 1, 2, or 0 = unclassified
    ProjectivePoint loc1, loc2;
    Vec3 support_pole = Vec3::Zero();  // DoubleSupporting only
};

// --- generic pair-condition engine -----------------------------------------
// Finds all (s, t) with f(s) = +-g(t) (unit-vector functions, condition taken
// projectively).  Grid scan for seed cells (local minima of projective
// distance under a speed-scaled threshold), then damped Gauss-Newton on the
// cross-product residual, then union-find dedup in tol_dedup balls.

struct PairHit {
    double s = 0, t = 0;
    double residual = 0;
};

struct PairScanResult {
    std::vector<PairHit> hits;
    std::vector<PairHit> diverged;  // seeds that neither converged nor settled
};

PairScanResult pair_scan(const std::function<Vec3(double)>& f, double Lf,
                         const std::function<Vec3(double)>& g, double Lg,
                         bool self, const CurveModel& mask_curve,
                         bool mask_f_cusps, bool mask_g_cusps, const Config& cfg);

// --- detectors --------------------------------------------------------------

std::vector<Event> find_crossings(const CurveModel& K, const Config& cfg = {});
std::vector<Event> find_inflections(const CurveModel& K, const Config& cfg = {});
std::vector<Event> find_cusps(const CurveModel& K, const Config& cfg = {});
std::vector<Event> find_double_supporting(const CurveModel& K, const Config& cfg = {});
std::vector<Event> find_antipodal_pairs(const CurveModel& K, const Config& cfg = {});
std::vector<Event> find_normal_tangent_pairs(const CurveModel& K, const Config& cfg = {});

std::vector<Event> find_all_events(const CurveModel& K, const Config& cfg = {});

// Roots of the scalar function h on [0, L), by sign-change bracketing on a
// dense grid plus bisection; cells overlapping the exclusion windows (cyclic
// intervals [c - delta, c + delta]) are skipped.
// Roots of a periodic scalar function on [0, L).  Windows of radius `delta`
// around each parameter in `exclude` are skipped entirely.  Parameters in
// `flips` mark points where h changes sign discontinuously (the dual lift of
// a curve does this at cusps); a sign change matched across a flip counts as
// no root, an unmatched one as a root at the flip itself.
std::vector<double> scalar_roots(const std::function<double(double)>& h, double L,
                                 const std::vector<double>& exclude, double delta,
                                 const Config& cfg, const std::vector<double>& flips = {});

} // namespace fbc
