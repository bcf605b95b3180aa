#include "fbcount/kbar.hpp"

#include <array>
#include <cmath>

#include "fbcount/classify.hpp"

namespace fbc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::array<double, 3> kBendSweep = {1e-2, 1e-3, 1e-4};

double kg_at(const CurveModel& K, double t) {
    Vec3 g, d1, d2;
    K.eval(t, g, d1, d2);
    double s = d1.norm();
    return g.dot(d1.cross(d2)) / (s * s * s);
}

} // namespace

AugmentedModel build_kbar(const CurveModel& K, const Config& cfg) {
    AugmentedModel A{K, {}};
    const double L = K.period();
    for (double tp : scan_kg_zeros(K, cfg)) {
        Vec3 g, d1, d2;
        K.eval(tp, g, d1, d2);
        InflectionGeodesic ig;
        ig.t_anchor = tp;
        ig.tangent = d1.normalized();
        ig.pole = g.cross(ig.tangent);
        // the side of the anchor that carries +pole is fixed by the curvature
        // sign just past the inflection
        double h = 2 * cfg.delta_cusp_frac * L;
        double k = kg_at(K, tp + h);
        if (std::abs(k) < 10 * cfg.tol_kg) k = kg_at(K, tp + 4 * h);
        ig.s = k > 0 ? -1 : 1;
        A.geodesics.push_back(ig);
    }
    return A;
}

namespace {

// Bent-geodesic chord endpoint: the geodesic through x with tangent gdir,
// bent with curvature kappa toward nrm.
Vec3 bent_point(const Vec3& x, const Vec3& gdir, const Vec3& nrm, double arc,
                double kappa) {
    return (std::cos(arc) * x + std::sin(arc) * gdir + 0.5 * kappa * arc * arc * nrm)
        .normalized();
}

// Crossing of the base curve with one inflection geodesic, at curve parameter u.
int label_curve_geodesic(const CurveModel& K, double u, const InflectionGeodesic& g,
                         double kappa, const Config& cfg) {
    Vec3 x, d1, d2;
    K.eval(u, x, d1, d2);
    Vec3 e1 = d1.normalized();
    Vec3 e2 = x.cross(e1);
    Vec3 gdir = g.pole.cross(x).normalized();
    double theta2 = std::atan2(gdir.dot(e2), gdir.dot(e1));
    double psi = std::abs(theta2);
    psi = std::min(psi, kPi - psi);
    if (psi < cfg.tol_ang || psi > kPi / 2 - cfg.tol_ang)
        fail(Err::TangentialContact, "inflection geodesic crossing not transverse");
    double eps = cfg.eps_frac * K.period();
    Vec3 nrm = g.normal_at(x);
    std::array<double, 4> ang;
    int k = 0;
    for (double d : {eps, -eps}) {
        Vec3 seg = K.pos(u + d) - x;
        ang[k++] = std::atan2(seg.dot(e2), seg.dot(e1));
    }
    for (double d : {eps, -eps}) {
        Vec3 seg = bent_point(x, d > 0 ? gdir : Vec3(-gdir), nrm, std::abs(d), kappa) - x;
        ang[k++] = std::atan2(seg.dot(e2), seg.dot(e1));
    }
    int lab = sector_label(ang, 0.0, theta2, 1e-10);
    if (lab < 0) fail(Err::SectorAmbiguous, "bent-geodesic sector test ambiguous");
    return lab;
}

// Crossing of two inflection geodesics at their (unique) intersection point.
int label_geodesic_geodesic(const InflectionGeodesic& gi, const InflectionGeodesic& gj,
                            double kappa, double eps, const Config& cfg) {
    Vec3 x = gi.pole.cross(gj.pole);
    if (x.norm() < 1e-12) fail(Err::DegeneratePair, "coincident inflection geodesics");
    x.normalize();
    Vec3 di = gi.pole.cross(x).normalized();
    Vec3 dj = gj.pole.cross(x).normalized();
    Vec3 e1 = di, e2 = x.cross(e1);
    double theta2 = std::atan2(dj.dot(e2), dj.dot(e1));
    double psi = std::abs(theta2);
    psi = std::min(psi, kPi - psi);
    if (psi < cfg.tol_ang || psi > kPi / 2 - cfg.tol_ang)
        fail(Err::TangentialContact, "inflection geodesics cross non-generically");
    std::array<double, 4> ang;
    int k = 0;
    for (const auto* g : {&gi, &gj}) {
        Vec3 gdir = g->pole.cross(x).normalized();
        Vec3 nrm = g->normal_at(x);
        for (double d : {eps, -eps}) {
            Vec3 seg =
                bent_point(x, d > 0 ? gdir : Vec3(-gdir), nrm, std::abs(d), kappa) - x;
            ang[k++] = std::atan2(seg.dot(e2), seg.dot(e1));
        }
    }
    int lab = sector_label(ang, 0.0, theta2, 1e-10);
    if (lab < 0) fail(Err::SectorAmbiguous, "geodesic-pair sector test ambiguous");
    return lab;
}

template <typename Fn>
int stable_bend_label(Fn&& fn) {
    int lab = 0;
    for (double kappa : kBendSweep) {
        int l = fn(kappa);
        if (lab && l != lab)
            fail(Err::BendUnstable, "crossing label changes under kappa_bend halving");
        lab = l;
    }
    return lab;
}

} // namespace

CountReport kbar_counts(const AugmentedModel& A, const std::vector<Event>& base_events,
                        const Config& cfg) {
    const CurveModel& K = A.base;
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    CountReport r = count_report(K, base_events);
    r.kbar = true;
    if (A.geodesics.empty()) return r;

    // crossings of the base curve with each inflection geodesic (the anchor
    // inflection itself stays an inflection, not a crossing)
    for (const auto& g : A.geodesics) {
        std::vector<double> exclude = K.cusps();
        exclude.push_back(g.t_anchor);
        auto h = [&](double u) { return K.pos(u).dot(g.pole); };
        for (double u : scalar_roots(h, L, exclude, delta, cfg)) {
            int lab = stable_bend_label(
                [&](double kappa) { return label_curve_geodesic(K, u, g, kappa, cfg); });
            (lab == 1 ? r.C1 : r.C2)++;
        }
    }

    // crossings between pairs of inflection geodesics, both bent
    double eps = cfg.eps_frac * L;
    for (size_t i = 0; i < A.geodesics.size(); ++i)
        for (size_t j = i + 1; j < A.geodesics.size(); ++j) {
            int lab = stable_bend_label([&](double kappa) {
                return label_geodesic_geodesic(A.geodesics[i], A.geodesics[j], kappa, eps,
                                               cfg);
            });
            (lab == 1 ? r.C1 : r.C2)++;
        }

    // normal-tangent pairs whose first point lies on an inflection geodesic:
    // the tangent geodesic at q must be perpendicular to g, i.e. the dual
    // lift of q lies in g's plane; there rho = pi/2 exactly.
    for (const auto& g : A.geodesics) {
        auto h = [&](double u) { return dual_lift(K, u).dot(g.pole); };
        for (double q : scalar_roots(h, L, {}, delta, cfg, K.cusps())) {
            if (K.near_cusp(q, 1e-6 * L))
                fail(Err::AtCusp, "normal foot on inflection geodesic at a cusp");
            Vec3 dq = dual_lift(K, q);
            Vec3 alpha = g.pole.cross(dq);
            if (alpha.norm() < 1e-9)
                fail(Err::DegeneratePair, "normal foot on inflection geodesic degenerate");
            alpha.normalize();
            Vec3 qv = K.pos(q);
            double ca = qv.dot(alpha);
            double cn = qv.dot(g.normal_at(alpha));
            if (std::abs(ca) < cfg.tol_ang || std::abs(cn) < cfg.tol_ang)
                fail(Err::CenterHit, "q at distance 0 or pi/2 from the geodesic foot");
            ((ca * cn > 0) ? r.N2 : r.N1)++;
        }
    }
    return r;
}

} // namespace fbc
