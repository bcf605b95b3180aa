#include "fbcount/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}

} // namespace

int sector_label(const std::array<double, 4>& segment_angles, double line1_angle,
                 double line2_angle, double ambiguity_margin) {
    // boundary rays of the four sectors
    std::array<double, 4> bnd = {wrap_2pi(line1_angle), wrap_2pi(line1_angle + kPi),
                                 wrap_2pi(line2_angle), wrap_2pi(line2_angle + kPi)};
    std::sort(bnd.begin(), bnd.end());
    std::array<double, 4> width;
    for (int k = 0; k < 4; ++k)
        width[k] = wrap_2pi(bnd[(k + 1) % 4] - bnd[k]);
    // the two opposite sectors of width < pi/2 are alpha and beta
    std::array<int, 2> acute{-1, -1};
    int na = 0;
    for (int k = 0; k < 4; ++k)
        if (width[k] < kPi / 2 && na < 2) acute[na++] = k;
    if (na != 2) return -1;  // near-perpendicular tangents: caller handles
    std::array<int, 4> occupancy{0, 0, 0, 0};
    for (double a : segment_angles) {
        a = wrap_2pi(a);
        int sec = -1;
        for (int k = 0; k < 4; ++k) {
            double off = wrap_2pi(a - bnd[k]);
            if (off < width[k]) {
                if (off < ambiguity_margin || width[k] - off < ambiguity_margin) return -1;
                sec = k;
                break;
            }
        }
        if (sec < 0) return -1;
        ++occupancy[sec];
    }
    int in_alpha = occupancy[acute[0]], in_beta = occupancy[acute[1]];
    if (in_alpha + in_beta != 2) return -1;
    return (in_alpha == 1 && in_beta == 1) ? 1 : 2;
}

namespace {

// One classification pass of a crossing at probe offset eps.
int crossing_label_at(const CurveModel& K, double s, double t, double eps,
                      const Config& cfg) {
    Vec3 x = K.pos(s);
    Vec3 e1, e2;
    {
        Vec3 g, d1, d2;
        K.eval(s, g, d1, d2);
        e1 = d1.normalized();
    }
    e2 = x.cross(e1);
    double sigma = K.pos(t).dot(x) < 0 ? -1.0 : 1.0;
    Vec3 g, d1, d2;
    K.eval(t, g, d1, d2);
    Vec3 u2 = sigma * d1.normalized();
    double theta2 = std::atan2(u2.dot(e2), u2.dot(e1));
    double psi = std::abs(theta2);
    psi = std::min(psi, kPi - psi);  // acute angle between the tangent lines
    if (psi < cfg.tol_ang || psi > kPi / 2 - cfg.tol_ang)
        fail(Err::TangentialContact, "crossing tangents parallel or perpendicular");

    std::array<double, 4> ang;
    int k = 0;
    for (double base : {s, t}) {
        double sg = (base == t) ? sigma : 1.0;
        for (double d : {eps, -eps}) {
            Vec3 P = sg * K.pos(base + d);
            Vec3 seg = P - x;
            ang[k++] = std::atan2(seg.dot(e2), seg.dot(e1));
        }
    }
    return sector_label(ang, 0.0, theta2, 1e-9);
}

} // namespace

int classify_crossing(const CurveModel& K, const Event& e, const Config& cfg) {
    if (e.kind != EventKind::Crossing) fail(Err::PreconditionViolated, "not a crossing");
    double eps = cfg.eps_frac * K.period();
    int prev = -1;
    for (int attempt = 0; attempt < 5; ++attempt) {
        int lab = crossing_label_at(K, e.t1, e.t2, eps, cfg);
        if (lab > 0 && lab == prev) return lab;
        prev = lab > 0 ? lab : -1;
        eps *= 0.5;
    }
    fail(Err::SectorAmbiguous, "crossing sector assignment unstable under eps halving");
}

namespace {

int side_of(const CurveModel& K, double t, double off, const Vec3& base, const Vec3& w) {
    Vec3 q = K.pos(t + off);
    if (q.dot(base) < 0) q = -q;
    return q.dot(w) > 0 ? 1 : -1;
}

int support_side(const CurveModel& K, double t, const Vec3& base, const Vec3& w,
                 double eps) {
    int sp = side_of(K, t, eps, base, w);
    int sm = side_of(K, t, -eps, base, w);
    if (sp != sm)
        fail(Err::MixedSideAtTangency,
             "arc changes side of its supporting geodesic at t=" + std::to_string(t));
    return sp;
}

} // namespace

int classify_double_supporting(const CurveModel& K, const Event& e, const Config& cfg) {
    if (e.kind != EventKind::DoubleSupporting)
        fail(Err::PreconditionViolated, "not a double supporting geodesic");
    Vec3 x1 = K.pos(e.t1), x2 = K.pos(e.t2);
    if (x1.dot(x2) < 0) x2 = -x2;  // short (< pi/2) segment representatives
    const Vec3& w = e.support_pole;
    double eps = cfg.eps_frac * K.period();
    int lab = 0;
    for (double ee : {eps, eps / 2}) {
        int s1 = support_side(K, e.t1, x1, w, ee);
        int s2 = support_side(K, e.t2, x2, w, ee);
        int l = (s1 == s2) ? 1 : 2;
        if (lab && l != lab)
            fail(Err::MixedSideAtTangency, "support side test unstable under eps halving");
        lab = l;
    }
    return lab;
}

int classify_antipodal_pair(const CurveModel& K, const Event& e, const Config& cfg) {
    if (e.kind != EventKind::AntipodalPair)
        fail(Err::PreconditionViolated, "not an antipodal pair");
    FramedPoint f = frame_at(K, e.t1, cfg);
    Vec3 q = K.pos(e.t2);
    if (q.dot(f.T) < 0) q = -q;  // q = a_p as a lift
    Vec3 wq = dual_lift(K, e.t2);  // pole of tau_q
    if (proj_distance(wq, f.n) < cfg.tol_ang)
        fail(Err::OnBoundary, "tau_q coincides with tau_p");
    if (proj_distance(wq, f.c_lift) < cfg.tol_ang)
        fail(Err::OnBoundary, "tau_q coincides with Y_p");
    // tau_q \ {q} lies in one region cut out by tau_p and Y_p; probe along it.
    for (double a : {kPi / 4, kPi / 3, kPi / 5}) {
        Vec3 m = std::cos(a) * q + std::sin(a) * wq.cross(q);
        double d1 = m.dot(f.n), d2 = m.dot(f.c_lift);
        if (std::abs(d1) <= cfg.tol_on || std::abs(d2) <= cfg.tol_on) continue;
        // c_p's region has sign +1 (c_lift . n = sin rho > 0)
        return d1 * d2 > 0 ? 1 : 2;
    }
    fail(Err::OnBoundary, "antipodal probe degenerate");
}

int classify_normal_tangent_pair(const CurveModel& K, const Event& e, const Config& cfg) {
    if (e.kind != EventKind::NormalTangentPair)
        fail(Err::PreconditionViolated, "not a normal-tangent pair");
    FramedPoint f = frame_at(K, e.t1, cfg);
    Vec3 q = K.pos(e.t2);
    double y = q.dot(f.n), x = q.dot(f.gamma);
    if (y < 0) {
        y = -y;
        x = -x;
    }
    double theta = std::atan2(y, x);  // arc position of q along nu_p, in (0, pi)
    if (std::abs(theta - f.rho) < cfg.tol_ang)
        fail(Err::CenterHit, "q coincides with c_p");
    return theta < f.rho ? 2 : 1;
}

void classify_all(const CurveModel& K, std::vector<Event>& events, const Config& cfg) {
    for (auto& e : events) {
        switch (e.kind) {
            case EventKind::Crossing:
                e.type_label = classify_crossing(K, e, cfg);
                break;
            case EventKind::DoubleSupporting:
                e.type_label = classify_double_supporting(K, e, cfg);
                break;
            case EventKind::AntipodalPair:
                e.type_label = classify_antipodal_pair(K, e, cfg);
                break;
            case EventKind::NormalTangentPair:
                e.type_label = classify_normal_tangent_pair(K, e, cfg);
                break;
            case EventKind::Inflection:
            case EventKind::Cusp:
                break;  // inflections carry no type; cusps verified type 1 at detection
        }
    }
}

} // namespace fbc
