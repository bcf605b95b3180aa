#include "fbcount/genericity.hpp"

#include <cmath>

namespace fbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double line_angle(const Vec3& u, const Vec3& v) {
    double c = std::abs(u.normalized().dot(v.normalized()));
    return std::acos(std::min(1.0, c));  // acute angle between lines
}

} // namespace

std::vector<Violation> check_genericity(const CurveModel& K,
                                        const std::vector<Event>& events,
                                        const Config& cfg) {
    std::vector<Violation> out;
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    auto add = [&](const std::string& code, double t1, double t2, const std::string& d) {
        out.push_back({code, t1, t2, d});
    };

    std::vector<double> inflection_params;
    for (const auto& e : events)
        if (e.kind == EventKind::Inflection) inflection_params.push_back(e.t1);

    auto tangent_dir = [&](double t) {
        Vec3 g, d1, d2;
        K.eval(t, g, d1, d2);
        return Vec3(d1.normalized());
    };

    for (const auto& e : events) {
        switch (e.kind) {
            case EventKind::Crossing: {
                double psi = line_angle(tangent_dir(e.t1), tangent_dir(e.t2));
                if (psi < cfg.tol_ang)
                    add("parallel_tangents", e.t1, e.t2, "crossing tangents nearly parallel");
                if (psi > kPi / 2 - cfg.tol_ang)
                    add("perpendicular_tangents", e.t1, e.t2,
                        "crossing tangents nearly perpendicular");
                for (double ip : inflection_params)
                    if (K.param_dist(e.t1, ip) < delta || K.param_dist(e.t2, ip) < delta)
                        add("crossing_at_inflection", e.t1, e.t2,
                            "crossing coincides with an inflection point");
                break;
            }
            case EventKind::DoubleSupporting: {
                double d = proj_distance(K.pos(e.t1), K.pos(e.t2));
                if (std::abs(d - kPi / 2) < cfg.tol_ang)
                    add("support_distance_half_pi", e.t1, e.t2,
                        "supporting points at distance pi/2");
                break;
            }
            case EventKind::AntipodalPair: {
                Vec3 wq = dual_lift(K, e.t2);
                try {
                    FramedPoint f = frame_at(K, e.t1, cfg);
                    if (proj_distance(wq, f.n) < cfg.tol_ang)
                        add("tau_q_is_tau_p", e.t1, e.t2, "tau_q coincides with tau_p");
                    if (proj_distance(wq, f.c_lift) < cfg.tol_ang)
                        add("tau_q_is_Y_p", e.t1, e.t2, "tau_q coincides with Y_p");
                } catch (const Error&) {
                    add("antipodal_at_singular_point", e.t1, e.t2,
                        "antipodal pair at a cusp or inflection");
                }
                break;
            }
            case EventKind::NormalTangentPair: {
                try {
                    FramedPoint f = frame_at(K, e.t1, cfg);
                    Vec3 q = K.pos(e.t2);
                    double y = std::abs(q.dot(f.n)), x = q.dot(f.gamma);
                    if (q.dot(f.n) < 0) x = -x;
                    double theta = std::atan2(y, x);
                    if (std::abs(theta - f.rho) < cfg.tol_ang)
                        add("q_is_center", e.t1, e.t2, "q coincides with c_p");
                } catch (const Error&) {
                    add("nt_at_singular_point", e.t1, e.t2,
                        "normal-tangent pair at a cusp or inflection");
                }
                break;
            }
            case EventKind::Inflection:
            case EventKind::Cusp: {
                // the tangent geodesic there must be transverse to K elsewhere
                Vec3 g, d1, d2;
                K.eval(e.t1, g, d1, d2);
                Vec3 dir = d1.norm() > cfg.v_min ? Vec3(d1.normalized())
                                                 : Vec3((d2 - d2.dot(g) * g).normalized());
                Vec3 w = g.cross(dir).normalized();
                auto h = [&](double u) { return K.pos(u).dot(w); };
                std::vector<double> exclude = K.cusps();
                exclude.push_back(e.t1);
                for (double u : scalar_roots(h, L, exclude, delta, cfg))
                    if (std::abs(tangent_dir(u).dot(w)) < cfg.tol_ang)
                        add("singular_tangent_retangent", e.t1, u,
                            "tangent geodesic at a cusp/inflection tangent to K elsewhere");
                break;
            }
        }
    }

    // events too close to cusps or inflections
    for (const auto& e : events) {
        if (e.kind == EventKind::Inflection || e.kind == EventKind::Cusp) continue;
        for (double p : {e.t1, e.t2}) {
            // supporting geodesics anchored at a cusp carry the cusp parameter
            // itself; only a *nearby but distinct* parameter is degenerate
            bool is_cusp_anchor = e.kind == EventKind::DoubleSupporting &&
                                  K.near_cusp(p, 1e-6 * L);
            if (!is_cusp_anchor && K.near_cusp(p, delta))
                add("event_near_cusp", e.t1, e.t2, "event parameter within delta of a cusp");
            if (e.kind != EventKind::Crossing)  // crossings checked above
                for (double ip : inflection_params)
                    if (K.param_dist(p, ip) < delta)
                        add("event_near_inflection", e.t1, e.t2,
                            "event parameter within delta of an inflection");
        }
    }

    // no geodesic through more than two tangency / cusp points
    std::vector<std::pair<double, Vec3>> support_points;
    auto add_support = [&](double t) {
        Vec3 x = K.pos(t);
        for (const auto& [u, y] : support_points)
            if (std::min((x - y).norm(), (x + y).norm()) < 1e-6) return;
        support_points.push_back({K.wrap(t), x});
    };
    for (const auto& e : events) {
        if (e.kind == EventKind::DoubleSupporting) {
            add_support(e.t1);
            add_support(e.t2);
        } else if (e.kind == EventKind::Cusp) {
            add_support(e.t1);
        }
    }
    for (const auto& e : events) {
        if (e.kind != EventKind::DoubleSupporting) continue;
        int on = 0;
        for (const auto& [u, x] : support_points) {
            // a contact within delta of the line's own contacts is the same
            // local contact, not a third support point
            if (K.param_dist(u, e.t1) < delta || K.param_dist(u, e.t2) < delta) continue;
            if (std::abs(x.dot(e.support_pole)) < cfg.tol_on * 100) ++on;
        }
        if (on > 0)
            add("supporting_geodesic_multiplicity", e.t1, e.t2,
                "a geodesic supports K at more than two points");
    }

    // a normal geodesic tangent at more than one point: two normal-tangent
    // pairs sharing the same first parameter
    std::vector<double> nt_feet;
    for (const auto& e : events)
        if (e.kind == EventKind::NormalTangentPair) nt_feet.push_back(e.t1);
    std::sort(nt_feet.begin(), nt_feet.end());
    for (size_t i = 0; i + 1 < nt_feet.size(); ++i)
        if (nt_feet[i + 1] - nt_feet[i] < cfg.tol_dedup_frac * L * 10)
            add("normal_multi_tangent", nt_feet[i], nt_feet[i + 1],
                "a normal geodesic is tangent to K at two points");

    return out;
}

} // namespace fbc
