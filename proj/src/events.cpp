#include "fbcount/events.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fbcount/detail/parallel.hpp"

namespace fbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double torus_dist(double a, double b, double L) {
    double d = std::fmod(std::abs(a - b), L);
    return std::min(d, L - d);
}

// Union-find dedup of refined hits inside tol balls (torus metric per axis).
std::vector<PairHit> dedup_hits(std::vector<PairHit> hits, double Ls, double Lt, double tol) {
    const size_t n = hits.size();
    std::vector<size_t> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t i) {
        while (root[i] != i) i = root[i] = root[root[i]];
        return i;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (torus_dist(hits[i].s, hits[j].s, Ls) < tol &&
                torus_dist(hits[i].t, hits[j].t, Lt) < tol)
                root[find(i)] = find(j);
    std::vector<PairHit> out;
    for (size_t i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        PairHit best = hits[i];
        for (size_t j = 0; j < n; ++j)
            if (find(j) == find(i) && hits[j].residual < best.residual) best = hits[j];
        out.push_back(best);
    }
    std::sort(out.begin(), out.end(), [](const PairHit& a, const PairHit& b) {
        return a.s != b.s ? a.s < b.s : a.t < b.t;
    });
    return out;
}

struct RefineOutcome {
    enum { Hit, NonEvent, Diverged } status;
    PairHit hit;
};

// Damped Gauss-Newton on F(s,t) = f(s) x (sigma g(t)), sigma the matching sign.
RefineOutcome refine_pair(const std::function<Vec3(double)>& f,
                          const std::function<Vec3(double)>& g, double Ls, double Lt,
                          double s, double t, const Config& cfg) {
    auto resid = [&](double ss, double tt) -> Vec3 {
        Vec3 a = f(ss), b = g(tt);
        if (a.dot(b) < 0) b = -b;
        return a.cross(b);
    };
    const double hs = 1e-7 * Ls, ht = 1e-7 * Lt;
    Vec3 r = resid(s, t);
    std::vector<double> hist;
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (r.norm() < cfg.newton_tol) return {RefineOutcome::Hit, {s, t, r.norm()}};
        hist.push_back(r.norm());
        // a plateau far above the target is a nonzero local minimum, not a root
        if (it >= 12 && r.norm() > 1e-6 && r.norm() > 0.7 * hist[it - 8])
            return {RefineOutcome::NonEvent, {s, t, r.norm()}};
        Eigen::Matrix<double, 3, 2> J;
        J.col(0) = (resid(s + hs, t) - resid(s - hs, t)) / (2 * hs);
        J.col(1) = (resid(s, t + ht) - resid(s, t - ht)) / (2 * ht);
        Eigen::Matrix2d A = J.transpose() * J;
        Eigen::Vector2d rhs = -J.transpose() * r;
        if (std::abs(A.determinant()) < 1e-300) return {RefineOutcome::Diverged, {s, t, r.norm()}};
        Eigen::Vector2d step = A.ldlt().solve(rhs);
        double lam = 1.0;
        bool improved = false;
        for (int h = 0; h < 30; ++h) {
            Vec3 rn = resid(s + lam * step[0], t + lam * step[1]);
            if (rn.norm() < r.norm()) {
                s += lam * step[0];
                t += lam * step[1];
                r = rn;
                improved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!improved || lam * step.norm() < 1e-14 * std::min(Ls, Lt)) {
            // stalled: either converged to the root or to a nonzero local min
            if (r.norm() < cfg.newton_tol) return {RefineOutcome::Hit, {s, t, r.norm()}};
            return {RefineOutcome::NonEvent, {s, t, r.norm()}};
        }
    }
    if (r.norm() < cfg.newton_tol) return {RefineOutcome::Hit, {s, t, r.norm()}};
    return {RefineOutcome::Diverged, {s, t, r.norm()}};
}

} // namespace

PairScanResult pair_scan(const std::function<Vec3(double)>& f, double Lf,
                         const std::function<Vec3(double)>& g, double Lg,
                         bool self, const CurveModel& mask_curve,
                         bool mask_f_cusps, bool mask_g_cusps, const Config& cfg) {
    const int N = cfg.grid;
    const double hs = Lf / N, ht = Lg / N;
    const double delta = cfg.delta_cusp_frac * mask_curve.period();

    std::vector<Vec3> F(N), G(N);
    std::vector<double> sf(N), sg(N);
    std::vector<char> vf(N, 1), vg(N, 1);
    auto sample = [&](const std::function<Vec3(double)>& fn, double L, bool mask,
                      std::vector<Vec3>& V, std::vector<double>& sp, std::vector<char>& ok) {
        double hfd = 1e-5 * L;
        detail::parallel_for(N, cfg, [&](int i) {
            double t = L * i / N;
            if (mask && mask_curve.near_cusp(t, delta)) {
                ok[i] = 0;
                V[i] = Vec3::UnitX();
                sp[i] = 0;
                return;
            }
            V[i] = fn(t);
            Vec3 a = fn(t + hfd), b = fn(t - hfd);
            if (a.dot(b) < 0) b = -b;
            sp[i] = (a - b).norm() / (2 * hfd);
        });
    };
    sample(f, Lf, mask_f_cusps, F, sf, vf);
    if (self) {
        G = F;
        sg = sf;
        vg = vf;
    } else {
        sample(g, Lg, mask_g_cusps, G, sg, vg);
    }

    // projective distance matrix
    std::vector<double> D(size_t(N) * N);
    detail::parallel_for(N, cfg, [&](int i) {
        for (int j = 0; j < N; ++j) {
            if (!vf[i] || !vg[j]) {
                D[size_t(i) * N + j] = 1e9;
                continue;
            }
            double c = std::abs(F[i].dot(G[j]));
            D[size_t(i) * N + j] = std::acos(std::min(1.0, c));
        }
    });

    auto at = [&](int i, int j) -> double {
        i = (i % N + N) % N;
        j = (j % N + N) % N;
        return D[size_t(i) * N + j];
    };

    std::vector<std::pair<double, double>> seeds;
    for (int i = 0; i < N; ++i) {
        if (!vf[i]) continue;
        for (int j = 0; j < N; ++j) {
            if (!vg[j]) continue;
            if (self) {
                if (j <= i) continue;
                double band = std::min<double>(std::abs(i - j), N - std::abs(i - j));
                if (band <= cfg.diag_band_cells) continue;
            }
            double d = at(i, j);
            double thresh = 3.0 * std::hypot(hs * sf[i], ht * sg[j]);
            if (d >= thresh) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (!di && !dj) continue;
                    if (at(i + di, j + dj) < d) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min) seeds.emplace_back(Lf * i / N, Lg * j / N);
        }
    }

    PairScanResult res;
    std::vector<RefineOutcome> outs(seeds.size());
    detail::parallel_for(int(seeds.size()), cfg, [&](int k) {
        outs[k] = refine_pair(f, g, Lf, Lg, seeds[k].first, seeds[k].second, cfg);
    });
    std::vector<PairHit> hits;
    for (size_t k = 0; k < outs.size(); ++k) {
        auto& o = outs[k];
        double s = std::fmod(o.hit.s, Lf);
        if (s < 0) s += Lf;
        double t = std::fmod(o.hit.t, Lg);
        if (t < 0) t += Lg;
        if (o.status == RefineOutcome::Diverged) {
            res.diverged.push_back({seeds[k].first, seeds[k].second, o.hit.residual});
            continue;
        }
        if (o.status == RefineOutcome::NonEvent) continue;
        if (mask_f_cusps && mask_curve.near_cusp(s, delta)) continue;
        if (mask_g_cusps && mask_curve.near_cusp(t, delta)) continue;
        if (self) {
            if (torus_dist(s, t, Lf) < cfg.diag_band_cells * hs) continue;
            if (t < s) std::swap(s, t);
        }
        hits.push_back({s, t, o.hit.residual});
    }
    res.hits = dedup_hits(std::move(hits), Lf, Lg, cfg.tol_dedup_frac * std::max(Lf, Lg));
    // a diverged seed adjacent to an accepted hit is just a bad start, not a miss
    std::erase_if(res.diverged, [&](const PairHit& d) {
        for (const auto& h : res.hits)
            if (torus_dist(d.s, h.s, Lf) < 4 * hs && torus_dist(d.t, h.t, Lg) < 4 * ht)
                return true;
        return false;
    });
    return res;
}

std::vector<double> scalar_roots(const std::function<double(double)>& h, double L,
                                 const std::vector<double>& exclude, double delta,
                                 const Config& cfg, const std::vector<double>& flips) {
    auto wrapL = [&](double t) {
        t = std::fmod(t, L);
        return t < 0 ? t + L : t;
    };
    auto excluded = [&](double t) {
        for (double c : exclude)
            if (torus_dist(t, c, L) < delta) return true;
        return false;
    };
    // Sample nodes: a uniform grid, with each flip parameter bracketed by a
    // pair of nodes just outside it so that every inter-node segment contains
    // at most one flip and h is never evaluated at a flip itself.
    const double eps = 1e-7 * L;
    std::vector<double> fl;
    for (double c : flips) fl.push_back(wrapL(c));
    std::vector<double> nodes;
    const int N = cfg.grid1d;
    nodes.reserve(N + 2 * fl.size());
    for (int i = 0; i < N; ++i) {
        double t = L * i / N;
        bool near_flip = false;
        for (double c : fl)
            if (torus_dist(t, c, L) < eps) near_flip = true;
        if (!near_flip) nodes.push_back(t);
    }
    for (double c : fl) {
        nodes.push_back(wrapL(c - eps));
        nodes.push_back(wrapL(c + eps));
    }
    std::sort(nodes.begin(), nodes.end());

    std::vector<double> roots;
    const size_t n = nodes.size();
    std::vector<double> vals(n);
    std::vector<char> bad(n);
    for (size_t i = 0; i < n; ++i) {
        bad[i] = excluded(nodes[i]);
        vals[i] = bad[i] ? 0.0 : h(nodes[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        if (bad[i] || bad[j]) continue;
        double a = nodes[i];
        double b = (j == 0) ? nodes[j] + L : nodes[j];
        // flips strictly inside (a, b): h carries an extra sign across each
        int nf = 0;
        double flip_at = 0;
        for (double c : fl) {
            double cu = c <= a ? c + L : c;
            if (cu > a && cu < b) {
                ++nf;
                flip_at = wrapL(c);
            }
        }
        double sgn = (nf % 2) ? -1.0 : 1.0;
        if (vals[i] * (sgn * vals[j]) >= 0) continue;
        if (nf > 0) {
            // sign change across a flip-hugging segment: root at the flip
            roots.push_back(flip_at);
            continue;
        }
        double lo = a, hi = b, vlo = vals[i];
        for (int it = 0; it < 100 && hi - lo > 1e-14 * L; ++it) {
            double m = 0.5 * (lo + hi);
            double vm = h(wrapL(m));
            if (vlo * vm <= 0)
                hi = m;
            else {
                lo = m;
                vlo = vm;
            }
        }
        roots.push_back(wrapL(0.5 * (lo + hi)));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::Crossing: return "crossing";
        case EventKind::DoubleSupporting: return "double_supporting";
        case EventKind::Inflection: return "inflection";
        case EventKind::Cusp: return "cusp";
        case EventKind::AntipodalPair: return "antipodal_pair";
        case EventKind::NormalTangentPair: return "normal_tangent_pair";
    }
    return "?";
}

const char* support_name(SupportKind k) {
    switch (k) {
        case SupportKind::None: return "none";
        case SupportKind::TangentTangent: return "tangent_tangent";
        case SupportKind::TangentCusp: return "tangent_cusp";
        case SupportKind::CuspCusp: return "cusp_cusp";
    }
    return "?";
}

namespace {

void require_clean(const PairScanResult& r, const char* what) {
    if (!r.diverged.empty())
        fail(Err::RefinementDiverged,
             std::string(what) + ": seed near (s=" + std::to_string(r.diverged[0].s) +
                 ", t=" + std::to_string(r.diverged[0].t) + ") did not converge");
}

std::function<Vec3(double)> gamma_fn(const CurveModel& K) {
    return [&K](double t) { return K.pos(t); };
}

std::function<Vec3(double)> dual_fn(const CurveModel& K) {
    return [&K](double t) { return dual_lift(K, t); };
}

std::function<Vec3(double)> indicatrix_fn(const CurveModel& K) {
    return [&K](double t) { return indicatrix_lift(K, t); };
}

} // namespace

std::vector<Event> find_crossings(const CurveModel& K, const Config& cfg) {
    auto f = gamma_fn(K);
    auto res = pair_scan(f, K.period(), f, K.period(), true, K, false, false, cfg);
    require_clean(res, "find_crossings");
    std::vector<Event> out;
    for (const auto& h : res.hits) {
        Event e;
        e.kind = EventKind::Crossing;
        e.t1 = h.s;
        e.t2 = h.t;
        e.loc1 = e.loc2 = ProjectivePoint::canon(K.pos(h.s));
        out.push_back(e);
    }
    return out;
}

std::vector<Event> find_inflections(const CurveModel& K, const Config& cfg) {
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    auto kg = [&](double t) {
        Vec3 g, d1, d2;
        K.eval(t, g, d1, d2);
        double s = d1.norm();
        return g.dot(d1.cross(d2)) / (s * s * s);
    };
    // touching zero (no sign change) is a genericity failure
    const int N = cfg.grid1d;
    std::vector<double> v(N);
    for (int i = 0; i < N; ++i) {
        double t = L * i / N;
        v[i] = K.near_cusp(t, delta) ? 1e9 : kg(t);
    }
    for (int i = 0; i < N; ++i) {
        double a = v[(i + N - 1) % N], b = v[i], c = v[(i + 1) % N];
        if (std::abs(b) < 100 * cfg.tol_kg && std::abs(b) <= std::abs(a) &&
            std::abs(b) <= std::abs(c) && a * c > 0 && a < 1e8 && c < 1e8 && a * b > 0)
            fail(Err::DoubleZero, "k_g touches zero without sign change near t=" +
                                      std::to_string(L * i / N));
    }
    std::vector<Event> out;
    for (double t : scan_kg_zeros(K, cfg)) {
        Event e;
        e.kind = EventKind::Inflection;
        e.t1 = e.t2 = t;
        e.loc1 = e.loc2 = ProjectivePoint::canon(K.pos(t));
        out.push_back(e);
    }
    return out;
}

std::vector<Event> find_cusps(const CurveModel& K, const Config& cfg) {
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    std::vector<Event> out;
    for (double c : K.cusps()) {
        double speed_ref = 0;
        for (int i = 0; i < 64; ++i) {
            double t = L * i / 64;
            if (!K.near_cusp(t, delta)) speed_ref = std::max(speed_ref, K.speed(t));
        }
        if (K.speed(c) > 1e-3 * speed_ref)
            fail(Err::VelocityNotZero, "declared cusp at t=" + std::to_string(c) +
                                           " has nonvanishing velocity");
        Vec3 g, d1, d2;
        K.eval(c, g, d1, d2);
        Vec3 dir = d2 - d2.dot(g) * g;
        if (dir.norm() < 1e-12) fail(Err::AtCusp, "degenerate cusp: no limit tangent");
        dir.normalize();
        Vec3 w = g.cross(dir).normalized();
        auto side = [&](double t) {
            Vec3 x = K.pos(t);
            if (x.dot(g) < 0) x = -x;
            return x.dot(w) > 0 ? 1 : -1;
        };
        double eps = 5 * delta;
        int sp = side(c + eps), sm = side(c - eps);
        int sp2 = side(c + eps / 2), sm2 = side(c - eps / 2);
        if (sp != sp2 || sm != sm2)
            fail(Err::AtCusp, "cusp side test unstable at t=" + std::to_string(c));
        if (sp == sm)
            fail(Err::Type2Cusp, "cusp at t=" + std::to_string(c) +
                                     ": branches on the same side of the tangent");
        Event e;
        e.kind = EventKind::Cusp;
        e.t1 = e.t2 = c;
        e.type_label = 1;
        e.loc1 = e.loc2 = ProjectivePoint::canon(g);
        out.push_back(e);
    }
    return out;
}

std::vector<Event> find_double_supporting(const CurveModel& K, const Config& cfg) {
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    std::vector<Event> out;

    // (a) tangent-tangent: self-intersections of the (projective) dual curve
    auto d = dual_fn(K);
    auto res = pair_scan(d, L, d, L, true, K, true, true, cfg);
    require_clean(res, "find_double_supporting");
    for (const auto& h : res.hits) {
        Vec3 x1 = K.pos(h.s), x2 = K.pos(h.t);
        double dist = proj_distance(x1, x2);
        if (std::abs(dist - kPi / 2) < cfg.tol_ang)
            fail(Err::NearHalfPi, "supporting points at distance pi/2, t=(" +
                                      std::to_string(h.s) + "," + std::to_string(h.t) + ")");
        // post-hoc certification against the primal tangency conditions
        Vec3 pole = dual_lift(K, h.s);
        Vec3 g, d1, d2;
        K.eval(h.t, g, d1, d2);
        if (std::abs(x2.dot(pole)) > 1e-6 || std::abs(d1.normalized().dot(pole)) > 1e-6)
            fail(Err::RefinementDiverged, "dual crossing fails primal tangency certification");
        Event e;
        e.kind = EventKind::DoubleSupporting;
        e.subkind = SupportKind::TangentTangent;
        e.t1 = h.s;
        e.t2 = h.t;
        e.support_pole = pole;
        e.loc1 = ProjectivePoint::canon(x1);
        e.loc2 = ProjectivePoint::canon(x2);
        out.push_back(e);
    }

    // (b) tangent-cusp: dual curve meets the geodesic dual to each cusp point
    for (double c : K.cusps()) {
        Vec3 cp = K.pos(c);
        auto h = [&](double t) { return cp.dot(dual_lift(K, t)); };
        // the anchor cusp is excluded; the others flip the sign of the dual lift
        for (double t : scalar_roots(h, L, {c}, delta, cfg, K.cusps())) {
            if (K.near_cusp(t, 1e-6 * L))
                fail(Err::AtCusp, "tangent geodesic at a cusp meets another cusp");
            Vec3 x = K.pos(t);
            double dist = proj_distance(x, cp);
            if (std::abs(dist - kPi / 2) < cfg.tol_ang)
                fail(Err::NearHalfPi, "tangent-cusp supporting points at distance pi/2");
            Event e;
            e.kind = EventKind::DoubleSupporting;
            e.subkind = SupportKind::TangentCusp;
            e.t1 = std::min(t, c);
            e.t2 = std::max(t, c);
            e.support_pole = dual_lift(K, t);
            e.loc1 = ProjectivePoint::canon(K.pos(e.t1));
            e.loc2 = ProjectivePoint::canon(K.pos(e.t2));
            out.push_back(e);
        }
    }

    // (c) cusp-cusp: the geodesic through each cusp pair always supports
    const auto& cusps = K.cusps();
    for (size_t i = 0; i < cusps.size(); ++i)
        for (size_t j = i + 1; j < cusps.size(); ++j) {
            Vec3 x1 = K.pos(cusps[i]), x2 = K.pos(cusps[j]);
            double dist = proj_distance(x1, x2);
            if (std::abs(dist - kPi / 2) < cfg.tol_ang)
                fail(Err::NearHalfPi, "cusp-cusp supporting points at distance pi/2");
            Event e;
            e.kind = EventKind::DoubleSupporting;
            e.subkind = SupportKind::CuspCusp;
            e.t1 = cusps[i];
            e.t2 = cusps[j];
            if (x1.dot(x2) < 0) x2 = -x2;
            e.support_pole = x1.cross(x2).normalized();
            e.loc1 = ProjectivePoint::canon(x1);
            e.loc2 = ProjectivePoint::canon(x2);
            out.push_back(e);
        }

    std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
        return a.t1 != b.t1 ? a.t1 < b.t1 : a.t2 < b.t2;
    });
    return out;
}

std::vector<Event> find_antipodal_pairs(const CurveModel& K, const Config& cfg) {
    auto res = pair_scan(indicatrix_fn(K), K.period(), gamma_fn(K), K.period(), false, K,
                         true, false, cfg);
    require_clean(res, "find_antipodal_pairs");
    std::vector<Event> out;
    for (const auto& h : res.hits) {
        Event e;
        e.kind = EventKind::AntipodalPair;
        e.t1 = h.s;  // p
        e.t2 = h.t;  // q = a_p
        e.loc1 = ProjectivePoint::canon(K.pos(h.s));
        e.loc2 = ProjectivePoint::canon(K.pos(h.t));
        out.push_back(e);
    }
    return out;
}

std::vector<Event> find_normal_tangent_pairs(const CurveModel& K, const Config& cfg) {
    auto res = pair_scan(indicatrix_fn(K), K.period(), dual_fn(K), K.period(), false, K,
                         true, true, cfg);
    require_clean(res, "find_normal_tangent_pairs");
    std::vector<Event> out;
    for (const auto& h : res.hits) {
        Event e;
        e.kind = EventKind::NormalTangentPair;
        e.t1 = h.s;  // p: the normal geodesic's foot
        e.t2 = h.t;  // q: the tangency
        e.loc1 = ProjectivePoint::canon(K.pos(h.s));
        e.loc2 = ProjectivePoint::canon(K.pos(h.t));
        out.push_back(e);
    }
    return out;
}

std::vector<Event> find_all_events(const CurveModel& K, const Config& cfg) {
    std::vector<Event> all;
    auto append = [&](std::vector<Event> v) {
        all.insert(all.end(), v.begin(), v.end());
    };
    append(find_crossings(K, cfg));
    append(find_inflections(K, cfg));
    append(find_cusps(K, cfg));
    append(find_double_supporting(K, cfg));
    append(find_antipodal_pairs(K, cfg));
    append(find_normal_tangent_pairs(K, cfg));
    return all;
}

} // namespace fbc
