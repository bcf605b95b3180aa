#include "fbcount/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace fbc {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Periodic cubic spline through (t_i, y_i), one scalar component.

struct PeriodicSpline {
    std::vector<double> knots;   // n+1, knots[n] = knots[0] + L
    std::vector<double> vals;    // n+1, vals[n] = vals[0]
    std::vector<double> M;       // n+1 second derivatives, M[n] = M[0]

    double eval(double t, double& d1, double& d2) const {
        const double L = knots.back() - knots.front();
        double u = std::fmod(t - knots.front(), L);
        if (u < 0) u += L;
        u += knots.front();
        auto it = std::upper_bound(knots.begin(), knots.end(), u);
        size_t i = std::min(knots.size() - 2, size_t(std::max<ptrdiff_t>(0, it - knots.begin() - 1)));
        double h = knots[i + 1] - knots[i];
        double a = knots[i + 1] - u, b = u - knots[i];
        double y = M[i] * a * a * a / (6 * h) + M[i + 1] * b * b * b / (6 * h) +
                   (vals[i] / h - M[i] * h / 6) * a + (vals[i + 1] / h - M[i + 1] * h / 6) * b;
        d1 = -M[i] * a * a / (2 * h) + M[i + 1] * b * b / (2 * h) +
             (vals[i + 1] - vals[i]) / h - (M[i + 1] - M[i]) * h / 6;
        d2 = (M[i] * a + M[i + 1] * b) / h;
        return y;
    }
};

// Thomas algorithm for a tridiagonal system (no corners).
std::vector<double> solve_tridiag(std::vector<double> a, std::vector<double> b,
                                  std::vector<double> c, std::vector<double> d) {
    const size_t n = b.size();
    for (size_t i = 1; i < n; ++i) {
        double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

// Cyclic tridiagonal solve via Sherman-Morrison.  a[i] multiplies x[i-1]
// (a[0] multiplies x[n-1]), c[i] multiplies x[i+1] (c[n-1] multiplies x[0]).
std::vector<double> solve_cyclic(const std::vector<double>& a, const std::vector<double>& b,
                                 const std::vector<double>& c, const std::vector<double>& d) {
    const size_t n = b.size();
    double gamma = -b[0];
    std::vector<double> bb = b;
    bb[0] -= gamma;
    bb[n - 1] -= c[n - 1] * a[0] / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    auto y = solve_tridiag(a, bb, c, d);
    auto z = solve_tridiag(a, bb, c, u);
    double vy = y[0] + a[0] / gamma * y[n - 1];
    double vz = 1.0 + z[0] + a[0] / gamma * z[n - 1];
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = y[i] - z[i] * vy / vz;
    return x;
}

PeriodicSpline fit_periodic(const std::vector<double>& knots, const std::vector<double>& vals) {
    // knots.size() == n+1 with knots[n]=knots[0]+L; vals likewise periodic.
    const size_t n = knots.size() - 1;
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i) h[i] = knots[i + 1] - knots[i];
    std::vector<double> a(n), b(n), c(n), d(n);
    for (size_t i = 0; i < n; ++i) {
        size_t im = (i + n - 1) % n;
        a[i] = h[im];
        b[i] = 2 * (h[im] + h[i]);
        c[i] = h[i];
        double sp = (vals[i + 1] - vals[i]) / h[i];
        double sm = (vals[i] - vals[im]) / h[im];
        d[i] = 6 * (sp - sm);
    }
    auto M = solve_cyclic(a, b, c, d);
    M.push_back(M[0]);
    PeriodicSpline s;
    s.knots = knots;
    s.vals = vals;
    s.M = std::move(M);
    return s;
}

// Normalize w(t) (non-unit) to the sphere with analytic derivatives.
void normalize_with_derivs(const Vec3& w, const Vec3& dw, const Vec3& ddw,
                           Vec3& g, Vec3& dg, Vec3& ddg) {
    double r = w.norm();
    double rp = w.dot(dw) / r;
    double rpp = (dw.squaredNorm() + w.dot(ddw)) / r - rp * rp / r;
    g = w / r;
    dg = dw / r - w * (rp / (r * r));
    ddg = ddw / r - 2 * dw * (rp / (r * r)) - w * (rpp / (r * r)) + 2 * w * (rp * rp / (r * r * r));
}

} // namespace

// ---------------------------------------------------------------------------
// CurveModel

CurveModel::CurveModel(double period, Eval eval, std::vector<double> cusps, bool forward)
    : period_(period), eval_(std::move(eval)), cusps_(std::move(cusps)), forward_(forward) {
    std::sort(cusps_.begin(), cusps_.end());
}

Vec3 CurveModel::pos(double t) const {
    Vec3 g, d1, d2;
    eval_(wrap(t), g, d1, d2);
    return g;
}

void CurveModel::eval(double t, Vec3& g, Vec3& dg, Vec3& ddg) const {
    eval_(wrap(t), g, dg, ddg);
}

double CurveModel::speed(double t) const {
    Vec3 g, d1, d2;
    eval_(wrap(t), g, d1, d2);
    return d1.norm();
}

double CurveModel::wrap(double t) const {
    double u = std::fmod(t, period_);
    if (u < 0) u += period_;
    return u;
}

double CurveModel::param_dist(double a, double b) const {
    double d = std::abs(wrap(a) - wrap(b));
    return std::min(d, period_ - d);
}

bool CurveModel::near_cusp(double t, double delta) const {
    for (double c : cusps_)
        if (param_dist(t, c) < delta) return true;
    return false;
}

CurveModel CurveModel::reversed() const {
    double L = period_;
    Eval base = eval_;
    Eval rev = [L, base](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
        base(L - t, g, dg, ddg);
        dg = -dg;
    };
    std::vector<double> cusps;
    for (double c : cusps_) cusps.push_back(L - c);
    return CurveModel(L, rev, std::move(cusps), !forward_);
}

CurveModel CurveModel::rotated(const Eigen::Matrix3d& R) const {
    Eval base = eval_;
    Eigen::Matrix3d Rc = R;
    Eval rot = [Rc, base](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
        base(t, g, dg, ddg);
        g = Rc * g;
        dg = Rc * dg;
        ddg = Rc * ddg;
    };
    return CurveModel(period_, rot, cusps_, forward_);
}

// ---------------------------------------------------------------------------
// Frames

FramedPoint frame_at(const CurveModel& K, double t, const Config& cfg) {
    if (K.near_cusp(t, cfg.delta_cusp_frac * K.period()))
        fail(Err::AtCusp, "frame requested within delta_cusp of a cusp");
    Vec3 g, d1, d2;
    K.eval(t, g, d1, d2);
    double s = d1.norm();
    if (s < cfg.v_min) fail(Err::AtCusp, "velocity below v_min");
    double kg = g.dot(d1.cross(d2)) / (s * s * s);
    if (std::abs(kg) <= cfg.tol_kg) fail(Err::AtInflection, "k_g vanishes at parameter");
    FramedPoint f;
    f.t = K.wrap(t);
    f.gamma = g;
    f.p = ProjectivePoint::canon(g);
    f.T = d1 / s;
    f.n = (kg > 0 ? 1.0 : -1.0) * g.cross(f.T);
    f.k_g = kg;
    f.rho = std::atan2(1.0, std::abs(kg));
    f.c_lift = std::cos(f.rho) * g + std::sin(f.rho) * f.n;
    f.c_p = ProjectivePoint::canon(f.c_lift);
    f.a_p = ProjectivePoint::canon(f.T);
    f.p_dual = ProjectivePoint::canon(f.n);
    return f;
}

// ---------------------------------------------------------------------------
// Sample-based construction

CurveModel from_samples(const std::vector<Vec3>& points_in, bool closed,
                        const Config& cfg, std::vector<double> cusps) {
    if (!closed) fail(Err::NotClosed, "only closed curves are supported");
    std::vector<Vec3> pts;
    pts.reserve(points_in.size());
    for (const auto& p : points_in) pts.push_back(p.normalized());
    if (pts.size() >= 2 && (pts.back() - pts.front()).norm() < 1e-12) pts.pop_back();
    if (pts.size() < 16) fail(Err::TooFewSamples, "need at least 16 samples");

    const size_t n = pts.size();
    std::vector<double> knots(n + 1);
    knots[0] = 0;
    for (size_t i = 0; i < n; ++i) {
        double ang = std::acos(std::clamp(pts[i].dot(pts[(i + 1) % n]), -1.0, 1.0));
        if (ang > kPi / 8) fail(Err::GapTooLarge, "consecutive samples more than pi/8 apart");
        knots[i + 1] = knots[i] + std::max(ang, 1e-9);
    }
    auto spl = std::make_shared<std::array<PeriodicSpline, 3>>();
    for (int c = 0; c < 3; ++c) {
        std::vector<double> vals(n + 1);
        for (size_t i = 0; i < n; ++i) vals[i] = pts[i][c];
        vals[n] = vals[0];
        (*spl)[c] = fit_periodic(knots, vals);
    }
    double L = knots[n];
    CurveModel::Eval ev = [spl](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
        Vec3 w, dw, ddw;
        for (int c = 0; c < 3; ++c) w[c] = (*spl)[c].eval(t, dw[c], ddw[c]);
        normalize_with_derivs(w, dw, ddw, g, dg, ddg);
    };
    return CurveModel(L, std::move(ev), std::move(cusps));
}

CurveModel lift_planar(const std::vector<Eigen::Vector2d>& points2d, double margin,
                       const Config& cfg) {
    if (points2d.empty()) fail(Err::EmptyInput, "no planar points");
    Eigen::Vector2d lo = points2d[0], hi = points2d[0];
    for (const auto& p : points2d) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    Eigen::Vector2d center = 0.5 * (lo + hi);
    double rmax = 0;
    for (const auto& p : points2d) rmax = std::max(rmax, (p - center).norm());
    if (rmax == 0) fail(Err::EmptyInput, "degenerate planar input");
    double scale = std::tan(kPi / 4 - margin) / rmax;
    std::vector<Vec3> lifted;
    lifted.reserve(points2d.size());
    for (const auto& p : points2d) {
        Eigen::Vector2d q = scale * (p - center);
        lifted.push_back(Vec3(q.x(), q.y(), 1.0).normalized());
    }
    return from_samples(lifted, true, cfg);
}

CurveModel lift_planar_analytic(const PlanarCurve& c, double margin, const Config& cfg) {
    // probe extent
    const int N = 2048;
    Eigen::Vector2d lo, hi;
    for (int i = 0; i < N; ++i) {
        Eigen::Vector2d p, d1, d2;
        c.eval(c.period * i / N, p, d1, d2);
        if (i == 0) lo = hi = p;
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    Eigen::Vector2d center = 0.5 * (lo + hi);
    double rmax = 1e-300;
    for (int i = 0; i < N; ++i) {
        Eigen::Vector2d p, d1, d2;
        c.eval(c.period * i / N, p, d1, d2);
        rmax = std::max(rmax, (p - center).norm());
    }
    double scale = std::tan(kPi / 4 - margin) / rmax;
    auto planar = c.eval;
    Eigen::Vector2d ctr = center;
    CurveModel::Eval ev = [planar, ctr, scale](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
        Eigen::Vector2d p, d1, d2;
        planar(t, p, d1, d2);
        Vec3 w(scale * (p.x() - ctr.x()), scale * (p.y() - ctr.y()), 1.0);
        Vec3 dw(scale * d1.x(), scale * d1.y(), 0.0);
        Vec3 ddw(scale * d2.x(), scale * d2.y(), 0.0);
        normalize_with_derivs(w, dw, ddw, g, dg, ddg);
    };
    return CurveModel(c.period, std::move(ev), c.cusps);
}

// ---------------------------------------------------------------------------
// Derived curves

Vec3 dual_lift(const CurveModel& K, double t) {
    Vec3 g, d1, d2;
    K.eval(t, g, d1, d2);
    return g.cross(d1).normalized();
}

Vec3 indicatrix_lift(const CurveModel& K, double t) {
    Vec3 g, d1, d2;
    K.eval(t, g, d1, d2);
    return d1.normalized();
}

namespace {

// Wrap a position-only evaluator with 4th-order finite-difference derivatives.
CurveModel fd_model(double L, std::function<Vec3(double)> pos, std::vector<double> cusps) {
    double h = 1e-4 * L;
    CurveModel::Eval ev = [pos, h](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
        Vec3 f0 = pos(t);
        Vec3 fp1 = pos(t + h), fm1 = pos(t - h), fp2 = pos(t + 2 * h), fm2 = pos(t - 2 * h);
        g = f0;
        dg = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12 * h);
        ddg = (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12 * h * h);
    };
    return CurveModel(L, std::move(ev), std::move(cusps));
}

} // namespace

CurveModel dual_curve(const CurveModel& K, const Config& cfg) {
    if (!K.cusps().empty() && K.cusps().size() % 2 != 0)
        fail(Err::PreconditionViolated, "dual of a curve with an odd number of cusps has no global lift");
    std::vector<double> cusp_flips = K.cusps();
    const CurveModel base = K;
    auto pos = [base, cusp_flips](double t) {
        double u = base.wrap(t);
        double sign = 1.0;
        for (double c : cusp_flips)
            if (u >= c) sign = -sign;  // tangent flips across each cusp
        return Vec3(sign * dual_lift(base, u));
    };
    std::vector<double> dual_cusps = scan_kg_zeros(K, cfg);
    return fd_model(K.period(), pos, std::move(dual_cusps));
}

CurveModel tangent_indicatrix(const CurveModel& K, const Config& cfg) {
    if (!K.cusps().empty() && K.cusps().size() % 2 != 0)
        fail(Err::PreconditionViolated, "indicatrix of a curve with an odd number of cusps has no global lift");
    std::vector<double> cusp_flips = K.cusps();
    const CurveModel base = K;
    auto pos = [base, cusp_flips](double t) {
        double u = base.wrap(t);
        double sign = 1.0;
        for (double c : cusp_flips)
            if (u >= c) sign = -sign;
        return Vec3(sign * indicatrix_lift(base, u));
    };
    return fd_model(K.period(), pos, {});
}

std::vector<double> scan_kg_zeros(const CurveModel& K, const Config& cfg) {
    const double L = K.period();
    const double delta = cfg.delta_cusp_frac * L;
    const int N = cfg.grid1d;
    auto kg_at = [&](double t) -> double {
        Vec3 g, d1, d2;
        K.eval(t, g, d1, d2);
        double s = d1.norm();
        return g.dot(d1.cross(d2)) / (s * s * s);
    };
    std::vector<double> zeros;
    double prev_t = 0, prev_k = 0;
    bool have_prev = false;
    for (int i = 0; i <= N; ++i) {
        double t = L * i / N;
        if (K.near_cusp(t, delta)) {
            have_prev = false;
            continue;
        }
        double k = kg_at(t);
        if (have_prev && prev_k * k < 0) {
            double a = prev_t, b = t;
            for (int it = 0; it < 100 && b - a > 1e-13 * L; ++it) {
                double m = 0.5 * (a + b);
                (kg_at(m) * prev_k <= 0 ? b : a) = m;
            }
            zeros.push_back(K.wrap(0.5 * (a + b)));
        }
        prev_t = t;
        prev_k = k;
        have_prev = true;
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

// Finite trigonometric series with exact derivatives.
struct TrigPoly {
    double c0 = 0;
    std::map<int, std::pair<double, double>> h;  // k -> (cos coeff, sin coeff)

    void ev(double t, double& f, double& d1, double& d2) const {
        f = c0;
        d1 = d2 = 0;
        for (auto& [k, ab] : h) {
            double c = std::cos(k * t), s = std::sin(k * t);
            f += ab.first * c + ab.second * s;
            d1 += k * (-ab.first * s + ab.second * c);
            d2 += k * k * (-ab.first * c - ab.second * s);
        }
    }
};

// Optional quadratic warp (x, y) -> (x + shear*y + wa*y^2, y + wb*x^2): a
// diffeomorphism on bounded sets, so it preserves cusps and tangencies of the
// curve itself, but it is not projective, so it breaks the straight-line
// coincidences (collinear support triples, lines through two cusps tangent
// elsewhere) of symmetric model curves.
PlanarCurve trig_curve(TrigPoly x, TrigPoly y, std::vector<double> cusps = {},
                       double shear = 0.0, double wa = 0.0, double wb = 0.0) {
    PlanarCurve c;
    c.period = 2 * kPi;
    c.cusps = std::move(cusps);
    c.eval = [x, y, shear, wa, wb](double t, Eigen::Vector2d& p, Eigen::Vector2d& d1,
                                   Eigen::Vector2d& d2) {
        double fx, fx1, fx2, fy, fy1, fy2;
        x.ev(t, fx, fx1, fx2);
        y.ev(t, fy, fy1, fy2);
        p = {fx + shear * fy + wa * fy * fy, fy + wb * fx * fx};
        d1 = {fx1 + shear * fy1 + 2 * wa * fy * fy1, fy1 + 2 * wb * fx * fx1};
        d2 = {fx2 + shear * fy2 + 2 * wa * (fy1 * fy1 + fy * fy2),
              fy2 + 2 * wb * (fx1 * fx1 + fx * fx2)};
    };
    return c;
}

// Inner-loop limacon r = b + cos(theta), optionally perturbed to break the
// mirror symmetry.  b = 0.3 reproduces one Fig-7-style curve, b = 0.85 the other.
PlanarCurve limacon(double b, double perturb) {
    TrigPoly x, y;
    x.c0 = 0.5;
    x.h[1] = {b, 0};
    x.h[2] = {0.5, 0};
    y.h[1] = {0, b};
    y.h[2] = {0, 0.5};
    if (perturb != 0) {
        x.h[3] = {0, perturb};
        y.h[3] = {0.7 * perturb, 0};
    }
    return trig_curve(x, y);
}

// Epicycloid with k cusps (all of type 1); warped to break its dihedral
// symmetry, which otherwise forces non-generic support coincidences.
PlanarCurve cusped_epicycloid(int k, double shear, double wa, double wb) {
    TrigPoly x, y;
    x.h[1] = {double(k + 1), 0};
    x.h[k + 1] = {-1.0, 0};
    y.h[1] = {0, double(k + 1)};
    y.h[k + 1] = {0, -1.0};
    std::vector<double> cusps;
    for (int j = 0; j < k; ++j) cusps.push_back(2 * kPi * j / k);
    return trig_curve(x, y, std::move(cusps), shear, wa, wb);
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"latitude_circle", "wavy_great_circle", "fig7_left", "fig7_right",
            "limacon",         "ellipse",           "bean",      "two_dent",
            "eight",           "cusped_hypocycloid"};
}

CurveModel make_builtin(const std::string& name,
                        const std::function<double(const std::string&, double)>& param,
                        const Config& cfg) {
    const double margin = param("margin", 0.15);
    if (name == "latitude_circle") {
        double th = param("theta", kPi / 4);
        CurveModel::Eval ev = [th](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
            double s = std::sin(th), c = std::cos(th);
            g = {s * std::cos(t), s * std::sin(t), c};
            dg = {-s * std::sin(t), s * std::cos(t), 0};
            ddg = {-s * std::cos(t), -s * std::sin(t), 0};
        };
        return CurveModel(2 * kPi, std::move(ev));
    }
    if (name == "wavy_great_circle") {
        double a = param("amplitude", 0.35);
        int m = int(param("harmonics", 3));
        double asym = param("asym", 0.4);
        CurveModel::Eval ev = [a, m, asym](double t, Vec3& g, Vec3& dg, Vec3& ddg) {
            double z = a * (std::sin(m * t) + asym * std::cos((m + 1) * t));
            double z1 = a * (m * std::cos(m * t) - asym * (m + 1) * std::sin((m + 1) * t));
            double z2 = a * (-m * m * std::sin(m * t) - asym * (m + 1) * (m + 1) * std::cos((m + 1) * t));
            normalize_with_derivs({std::cos(t), std::sin(t), z},
                                  {-std::sin(t), std::cos(t), z1},
                                  {-std::cos(t), -std::sin(t), z2}, g, dg, ddg);
        };
        return CurveModel(2 * kPi, std::move(ev));
    }
    if (name == "fig7_left")
        return lift_planar_analytic(limacon(0.85, param("perturb", 0.0)), margin, cfg);
    if (name == "fig7_right")
        return lift_planar_analytic(limacon(0.3, param("perturb", 0.0)), margin, cfg);
    if (name == "limacon")
        return lift_planar_analytic(limacon(param("b", 0.55), param("perturb", 0.0)), margin, cfg);
    if (name == "ellipse") {
        TrigPoly x, y;
        x.h[1] = {param("a", 1.3), 0};
        y.h[1] = {0, param("b", 1.0)};
        return lift_planar_analytic(trig_curve(x, y), margin, cfg);
    }
    if (name == "bean") {
        // oval with one dimple: two inflection points
        TrigPoly x, y;
        x.h[1] = {1.0, 0};
        x.h[2] = {param("dent", 0.35), 0};
        y.h[1] = {0, 1.0};
        return lift_planar_analytic(trig_curve(x, y, {}, param("shear", 0.0)), margin, cfg);
    }
    if (name == "two_dent") {
        // r = 1 + d cos(2 theta): two dimples, four inflection points
        double d = param("dent", 0.3);
        TrigPoly x, y;
        x.h[1] = {1 + d / 2, 0};
        x.h[3] = {d / 2, 0};
        y.h[1] = {0, 1 - d / 2};
        y.h[3] = {0, d / 2};
        return lift_planar_analytic(trig_curve(x, y, {}, param("shear", 0.0)), margin, cfg);
    }
    if (name == "eight") {
        TrigPoly x, y;
        x.h[2] = {0, 1.0};
        x.h[1] = {param("asym", 0.15), 0};
        y.h[1] = {0, 1.0};
        return lift_planar_analytic(trig_curve(x, y), margin, cfg);
    }
    if (name == "cusped_hypocycloid") {
        int k = int(param("cusps", 3));
        if (k < 1) fail(Err::BadSpec, "cusps must be >= 1");
        return lift_planar_analytic(cusped_epicycloid(k, param("shear", 0.05),
                                                      param("warp_a", 0.12 / k),
                                                      param("warp_b", 0.16 / k)),
                                    margin, cfg);
    }
    fail(Err::BadSpec, "unknown builtin '" + name + "'");
}

} // namespace fbc
