#include "fbcount/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fbcount/detail/parallel.hpp"

namespace fbc {

namespace {

// Transversal intersection of the minor great-circle arcs AB and CD.
bool arcs_cross(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    Vec3 n1 = a.cross(b), n2 = c.cross(d);
    double s1 = n1.dot(c), s2 = n1.dot(d);
    double s3 = n2.dot(a), s4 = n2.dot(b);
    if (s1 * s2 >= 0 || s3 * s4 >= 0) return false;
    // the sign tests admit the antipodal pair of arcs; require proximity
    Vec3 x = n1.cross(n2).normalized();
    if (x.dot(a + b) < 0) x = -x;
    return x.dot(c + d) > 0;
}

std::int64_t cell_key(const Vec3& m, double inv) {
    auto q = [&](double v) { return std::int64_t(std::floor(v * inv)) + (1 << 18); };
    return (q(m.x()) << 40) | (q(m.y()) << 20) | q(m.z());
}

// Count projective self-intersections of a closed polyline (some vertices may
// be invalid, breaking it into chains).  band = excluded cyclic index gap.
int polyline_self_intersections(const std::vector<Vec3>& P, const std::vector<char>& ok,
                                int band) {
    const int n = int(P.size());
    double max_chord = 0;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (ok[i] && ok[j]) max_chord = std::max(max_chord, (P[j] - P[i]).norm());
    }
    if (max_chord == 0) return 0;
    const double cs = 4 * max_chord;
    const double inv = 1.0 / cs;
    std::unordered_map<std::int64_t, std::vector<int>> hash;
    hash.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (!ok[i] || !ok[j]) continue;
        Vec3 m = 0.5 * (P[i] + P[j]);
        hash[cell_key(m, inv)].push_back(i);
        hash[cell_key(-m, inv)].push_back(i);
    }
    int count = 0;
    std::vector<int> cand;
    for (int i = 0; i < n; ++i) {
        int i2 = (i + 1) % n;
        if (!ok[i] || !ok[i2]) continue;
        Vec3 m = 0.5 * (P[i] + P[i2]);
        cand.clear();
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    Vec3 shifted = m + cs * Vec3(dx, dy, dz);
                    auto it = hash.find(cell_key(shifted, inv));
                    if (it == hash.end()) continue;
                    cand.insert(cand.end(), it->second.begin(), it->second.end());
                }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (int j : cand) {
            if (j <= i) continue;  // each unordered pair once
            int gap = std::min(std::abs(i - j), n - std::abs(i - j));
            if (gap <= band) continue;
            int j2 = (j + 1) % n;
            if (!ok[j] || !ok[j2]) continue;
            if (arcs_cross(P[i], P[i2], P[j], P[j2]) ||
                arcs_cross(P[i], P[i2], -P[j], -P[j2]))
                ++count;
        }
    }
    return count;
}

// Dense proximity sweep for f(s) = +-g(t): coarse grid, then recursive cell
// subdivision (no Newton) down to a strict projective-distance certificate.
int proximity_pair_count(const std::function<Vec3(double)>& f, double Lf,
                         const std::function<Vec3(double)>& g, double Lg,
                         const std::function<bool(double)>& valid_f,
                         const std::function<bool(double)>& valid_g, const Config& cfg,
                         int resolution,
                         const std::function<bool(double, double)>& skip_pair = {}) {
    // grid scales with sqrt(resolution) so the doubling check in
    // oracle_counts also perturbs the proximity sweeps
    const int M = std::max(2048, int(6.5 * std::sqrt(double(resolution))));
    std::vector<Vec3> F(M), G(M);
    std::vector<char> vf(M, 1), vg(M, 1);
    for (int i = 0; i < M; ++i) {
        double s = Lf * i / M, t = Lg * i / M;
        if (valid_f(s))
            F[i] = f(s);
        else
            vf[i] = 0;
        if (valid_g(t))
            G[i] = g(t);
        else
            vg[i] = 0;
    }
    std::vector<double> D(size_t(M) * M, 1e9);
    detail::parallel_for(M, cfg, [&](int i) {
        if (!vf[i]) return;
        for (int j = 0; j < M; ++j) {
            if (!vg[j]) continue;
            if (skip_pair && skip_pair(Lf * i / M, Lg * j / M)) continue;
            D[size_t(i) * M + j] = std::acos(std::min(1.0, std::abs(F[i].dot(G[j]))));
        }
    });
    auto at = [&](int i, int j) {
        return D[size_t((i % M + M) % M) * M + size_t((j % M + M) % M)];
    };

    std::vector<std::pair<double, double>> found;
    const double hs = Lf / M, ht = Lg / M;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            double d = at(i, j);
            if (d > 0.02) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && at(i + di, j + dj) < d) {
                        is_min = false;
                        break;
                    }
            if (!is_min) continue;
            // pattern search around the candidate cell: step while improving,
            // halve the radius only on failure, so narrow diagonal valleys of
            // the distance function can be tracked instead of stalled in
            double cs = Lf * i / M, ct = Lg * j / M;
            double rs = 2 * hs, rt = 2 * ht;
            double best = d;
            for (int iter = 0; iter < 600 && best > 1e-12 && rs > 1e-16; ++iter) {
                double bs = cs, bt = ct;
                bool improved = false;
                for (int a = -2; a <= 2; ++a)
                    for (int b = -2; b <= 2; ++b) {
                        if (!a && !b) continue;
                        double s = cs + rs * a / 2.0, t = ct + rt * b / 2.0;
                        double sw = std::fmod(s + Lf, Lf), tw = std::fmod(t + Lg, Lg);
                        if (!valid_f(sw) || !valid_g(tw)) continue;
                        if (skip_pair && skip_pair(sw, tw)) continue;
                        double dd = std::acos(std::min(1.0, std::abs(f(s).dot(g(t)))));
                        if (dd < best) {
                            best = dd;
                            bs = s;
                            bt = t;
                            improved = true;
                        }
                    }
                if (improved) {
                    cs = bs;
                    ct = bt;
                } else {
                    rs *= 0.5;
                    rt *= 0.5;
                }
            }
            if (best < 1e-7)
                found.emplace_back(std::fmod(cs + Lf, Lf), std::fmod(ct + Lg, Lg));
        }
    // dedup in parameter space
    auto tdist = [](double a, double b, double L) {
        double d = std::fmod(std::abs(a - b), L);
        return std::min(d, L - d);
    };
    std::vector<std::pair<double, double>> uniq;
    for (const auto& p : found) {
        bool dup = false;
        for (const auto& q : uniq)
            if (tdist(p.first, q.first, Lf) < 1e-4 * Lf &&
                tdist(p.second, q.second, Lg) < 1e-4 * Lg) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(p);
    }
    return int(uniq.size());
}

} // namespace

OracleCounts oracle_counts_once(const CurveModel& K, int resolution, const Config& cfg) {
    if (resolution < 10000) fail(Err::ResolutionTooLow, "oracle needs resolution >= 1e4");
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    const int R = resolution;
    OracleCounts oc;

    auto not_cusp = [&](double t) { return !K.near_cusp(t, delta); };
    auto always = [](double) { return true; };
    auto gamma = [&](double t) { return K.pos(t); };
    auto tang = [&](double t) { return indicatrix_lift(K, t); };
    auto dual = [&](double t) { return dual_lift(K, t); };

    // crossings: gamma meets +-gamma off the diagonal.  The band excludes the
    // trivial diagonal and, for cusped curves, the two branches hugging a
    // cusp, whose projective separation vanishes cubically at the cusp point.
    const double band = 0.02 * L;
    auto off_diag = [&](double s, double t) {
        return s >= t || K.param_dist(s, t) < band;
    };
    oc.crossings = proximity_pair_count(gamma, L, gamma, L, always, always, cfg, R, off_diag);

    std::vector<Vec3> Dp(R);
    std::vector<char> dok(R, 1);
    detail::parallel_for(R, cfg, [&](int i) {
        double t = L * i / R;
        if (K.near_cusp(t, delta)) {
            dok[i] = 0;
            Dp[i] = Vec3::UnitX();
        } else {
            Dp[i] = dual_lift(K, t);
        }
    });
    oc.bitangents = polyline_self_intersections(Dp, dok, std::max(2, R / 256));

    int flips = 0;
    double prev = 0;
    bool have = false;
    for (int i = 0; i <= R; ++i) {
        double t = L * i / R;
        if (K.near_cusp(t, delta)) {
            have = false;
            continue;
        }
        Vec3 g, d1, d2;
        K.eval(t, g, d1, d2);
        double s = d1.norm();
        double kg = g.dot(d1.cross(d2)) / (s * s * s);
        if (have && prev * kg < 0) ++flips;
        prev = kg;
        have = true;
    }
    oc.inflections = flips;
    oc.cusps = int(K.cusps().size());

    oc.antipodal = proximity_pair_count(tang, L, gamma, L, not_cusp, always, cfg, R);
    oc.normal_tangent = proximity_pair_count(tang, L, dual, L, not_cusp, not_cusp, cfg, R);
    return oc;
}

OracleCounts oracle_counts(const CurveModel& K, int resolution, const Config& cfg) {
    OracleCounts a = oracle_counts_once(K, resolution, cfg);
    OracleCounts b = oracle_counts_once(K, 2 * resolution, cfg);
    if (!(a == b))
        fail(Err::ResolutionTooLow, "oracle counts changed under resolution doubling");
    return a;
}

} // namespace fbc
