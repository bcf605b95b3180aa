#include "fbcount/svg.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace fbc {

namespace {

// Upper-hemisphere representative projected orthographically onto the disk.
Eigen::Vector2d disk_point(const Vec3& v) {
    Vec3 u = v.normalized();
    if (u.z() < 0) u = -u;
    return {u.x(), u.y()};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* kind_color(EventKind k) {
    switch (k) {
        case EventKind::Crossing: return "#d62728";
        case EventKind::DoubleSupporting: return "#1f77b4";
        case EventKind::Inflection: return "#2ca02c";
        case EventKind::Cusp: return "#ff7f0e";
        case EventKind::AntipodalPair: return "#9467bd";
        case EventKind::NormalTangentPair: return "#17becf";
    }
    return "#000000";
}

} // namespace

std::string render_svg(const CurveModel& K, const std::vector<Event>& events, int size) {
    const double L = K.period();
    const double R = 0.46 * size;
    const double cx = size / 2.0, cy = size / 2.0;
    auto px = [&](const Eigen::Vector2d& p) {
        return Eigen::Vector2d(cx + R * p.x(), cy - R * p.y());
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) +
           "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " +
           std::to_string(size) + " " + std::to_string(size) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(R) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6,4\"/>\n";

    // the curve, split where the hemisphere representative flips
    const int N = 2048;
    Vec3 prev_rep;
    bool have_prev = false;
    std::string path;
    auto flush = [&]() {
        if (!path.empty()) {
            svg += "<path d=\"" + path +
                   "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.6\"/>\n";
            path.clear();
        }
    };
    for (int i = 0; i <= N; ++i) {
        Vec3 v = K.pos(L * i / N).normalized();
        Vec3 rep = v.z() < 0 ? Vec3(-v) : v;
        bool jump = have_prev && prev_rep.dot(rep) < 0.8;
        if (jump) flush();
        Eigen::Vector2d p = px(disk_point(v));
        path += (path.empty() ? "M" : "L") + fmt(p.x()) + " " + fmt(p.y()) + " ";
        prev_rep = rep;
        have_prev = true;
    }
    flush();

    for (const auto& e : events) {
        for (int which = 0; which < 2; ++which) {
            if (which == 1 && e.kind != EventKind::AntipodalPair &&
                e.kind != EventKind::NormalTangentPair &&
                e.kind != EventKind::DoubleSupporting)
                break;
            const ProjectivePoint& loc = which == 0 ? e.loc1 : e.loc2;
            Eigen::Vector2d p = px(disk_point(loc.rep));
            const char* color = kind_color(e.kind);
            bool filled = e.type_label != 2;  // type 1 / untyped filled, type 2 hollow
            svg += "<circle cx=\"" + fmt(p.x()) + "\" cy=\"" + fmt(p.y()) +
                   "\" r=\"5\" fill=\"" + (filled ? color : std::string("white")) +
                   "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace fbc
