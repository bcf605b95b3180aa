#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fbcount/projective.hpp"

namespace fbc {

// Periodic parametric curve on the unit sphere with two derivatives.
// Immutable after construction; the evaluator must be callable concurrently.
class CurveModel {
public:
    using Eval = std::function<void(double t, Vec3& g, Vec3& dg, Vec3& ddg)>;

    CurveModel() = default;
    CurveModel(double period, Eval eval, std::vector<double> cusps = {},
               bool forward = true);

    double period() const { return period_; }
    const std::vector<double>& cusps() const { return cusps_; }
    bool forward() const { return forward_; }

    Vec3 pos(double t) const;
    void eval(double t, Vec3& g, Vec3& dg, Vec3& ddg) const;
    double speed(double t) const;

    // Parameter reduced to [0, L).
    double wrap(double t) const;
    // Cyclic parameter distance.
    double param_dist(double a, double b) const;
    bool near_cusp(double t, double delta) const;

    CurveModel reversed() const;
    CurveModel rotated(const Eigen::Matrix3d& R) const;

private:
    double period_ = 0;
    Eval eval_;
    std::vector<double> cusps_;
    bool forward_ = true;
};

// Full local data at a parameter.
struct FramedPoint {
    double t = 0;
    ProjectivePoint p;
    Vec3 gamma;          // the lift actually evaluated (not sign-canonicalized)
    Vec3 T;              // unit tangent
    Vec3 n;              // oriented unit normal (curve bends toward n)
    double k_g = 0;      // geodesic curvature, >= 0 relative to n by construction of n
    double rho = 0;      // arccot(|k_g|) in (0, pi/2)
    ProjectivePoint c_p; // center of the osculating circle
    ProjectivePoint a_p; // antipodal point, = T projectively
    ProjectivePoint p_dual;
    Vec3 c_lift;         // cos(rho)*gamma + sin(rho)*n
};

FramedPoint frame_at(const CurveModel& K, double t, const Config& cfg = {});

CurveModel from_samples(const std::vector<Vec3>& points, bool closed,
                        const Config& cfg = {}, std::vector<double> cusps = {});

CurveModel lift_planar(const std::vector<Eigen::Vector2d>& points2d, double margin,
                       const Config& cfg = {});

CurveModel dual_curve(const CurveModel& K, const Config& cfg = {});
CurveModel tangent_indicatrix(const CurveModel& K, const Config& cfg = {});

// Smooth lift of the dual curve: gamma x gamma' / |gamma'| (no curvature sign).
Vec3 dual_lift(const CurveModel& K, double t);
// Smooth lift of the tangent indicatrix: gamma' / |gamma'|.
Vec3 indicatrix_lift(const CurveModel& K, double t);

// Parameters where k_g changes sign (simple zeros), away from cusps.
std::vector<double> scan_kg_zeros(const CurveModel& K, const Config& cfg);

struct PlanarCurve {
    // planar position + two derivatives
    std::function<void(double t, Eigen::Vector2d& p, Eigen::Vector2d& dp,
                       Eigen::Vector2d& ddp)> eval;
    double period = 0;
    std::vector<double> cusps;
};

// Gnomonic lift of an analytic planar curve, scaled into a cap of radius
// pi/4 - margin.
CurveModel lift_planar_analytic(const PlanarCurve& c, double margin, const Config& cfg = {});

// Builtin families; `params` keys depend on the name (see builtin_names()).
CurveModel make_builtin(const std::string& name,
                        const std::function<double(const std::string&, double)>& param,
                        const Config& cfg = {});
std::vector<std::string> builtin_names();

} // namespace fbc
