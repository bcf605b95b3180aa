#include "fbcount/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace fbc {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    fail(Err::BadSpec, "spec field '" + field + "': " + why);
}

} // namespace

Config config_from_json(const json& j, const Config& base) {
    Config c = base;
    if (!j.is_object()) bad("config", "must be an object");
    auto num = [&](const char* key, double& slot) {
        if (j.contains(key)) {
            if (!j[key].is_number()) bad(std::string("config.") + key, "must be a number");
            slot = j[key].get<double>();
        }
    };
    auto integer = [&](const char* key, int& slot) {
        if (j.contains(key)) {
            if (!j[key].is_number_integer()) bad(std::string("config.") + key, "must be an integer");
            slot = j[key].get<int>();
        }
    };
    num("tol_sep", c.tol_sep);
    num("tol_on", c.tol_on);
    num("v_min", c.v_min);
    num("delta_cusp_frac", c.delta_cusp_frac);
    num("tol_kg", c.tol_kg);
    integer("grid", c.grid);
    integer("grid1d", c.grid1d);
    integer("newton_max_iter", c.newton_max_iter);
    num("newton_tol", c.newton_tol);
    num("tol_dedup_frac", c.tol_dedup_frac);
    num("eps_frac", c.eps_frac);
    num("tol_ang", c.tol_ang);
    num("diag_band_cells", c.diag_band_cells);
    num("kappa_bend", c.kappa_bend);
    integer("threads", c.threads);
    return c;
}

CurveModel load_spec(const json& spec, const Config& cfg) {
    if (!spec.is_object()) bad("<root>", "spec must be a JSON object");

    if (spec.contains("builtin")) {
        const auto& b = spec["builtin"];
        if (!b.is_object() || !b.contains("name") || !b["name"].is_string())
            bad("builtin.name", "missing or not a string");
        std::string name = b["name"].get<std::string>();
        json params = b.value("params", json::object());
        if (!params.is_object()) bad("builtin.params", "must be an object");
        auto param = [params](const std::string& key, double dflt) {
            if (!params.contains(key)) return dflt;
            if (!params[key].is_number()) bad("builtin.params." + key, "must be a number");
            return params[key].get<double>();
        };
        return make_builtin(name, param, cfg);
    }

    if (!spec.contains("kind") || !spec["kind"].is_string())
        bad("kind", "missing or not a string");
    std::string kind = spec["kind"].get<std::string>();
    if (!spec.contains("samples") || !spec["samples"].is_array())
        bad("samples", "missing or not an array");
    const auto& samples = spec["samples"];

    std::vector<double> cusps;
    if (spec.contains("cusps")) {
        if (!spec["cusps"].is_array()) bad("cusps", "must be an array of parameters");
        for (const auto& c : spec["cusps"]) {
            if (!c.is_number()) bad("cusps", "entries must be numbers");
            cusps.push_back(c.get<double>());
        }
    }

    if (kind == "spherical") {
        std::vector<Vec3> pts;
        for (const auto& s : samples) {
            if (!s.is_array() || s.size() != 3 || !s[0].is_number())
                bad("samples", "spherical samples must be [x, y, z] triples");
            pts.emplace_back(s[0].get<double>(), s[1].get<double>(), s[2].get<double>());
        }
        return from_samples(pts, true, cfg, cusps);
    }
    if (kind == "planar") {
        if (!cusps.empty()) bad("cusps", "cusps on sampled planar curves are unsupported");
        double margin = 0.15;
        if (spec.contains("margin")) {
            if (!spec["margin"].is_number()) bad("margin", "must be a number (radians)");
            margin = spec["margin"].get<double>();
        }
        std::vector<Eigen::Vector2d> pts;
        for (const auto& s : samples) {
            if (!s.is_array() || s.size() != 2 || !s[0].is_number())
                bad("samples", "planar samples must be [x, y] pairs");
            pts.emplace_back(s[0].get<double>(), s[1].get<double>());
        }
        return lift_planar(pts, margin, cfg);
    }
    bad("kind", "expected 'spherical', 'planar', or a 'builtin' block");
}

CurveModel load_spec_file(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) fail(Err::BadSpec, "cannot open spec file '" + path + "'");
    json spec;
    try {
        in >> spec;
    } catch (const json::exception& e) {
        fail(Err::BadSpec, "spec file '" + path + "' is not valid JSON: " + e.what());
    }
    return load_spec(spec, cfg);
}

namespace {

json counts_json(const CountReport& r) {
    return json{{"T1", r.T1}, {"T2", r.T2}, {"C1", r.C1}, {"C2", r.C2}, {"I", r.I},
                {"U", r.U},   {"A1", r.A1}, {"A2", r.A2}, {"N1", r.N1}, {"N2", r.N2},
                {"kbar", r.kbar}};
}

json point_json(const ProjectivePoint& p) {
    return json::array({p.rep.x(), p.rep.y(), p.rep.z()});
}

} // namespace

json report_json(const Analysis& a) {
    json events = json::array();
    for (const auto& e : a.events) {
        json ev{{"kind", kind_name(e.kind)},
                {"t1", e.t1},
                {"t2", e.t2},
                {"type", e.type_label},
                {"location", point_json(e.loc1)}};
        if (e.kind == EventKind::DoubleSupporting) {
            ev["subkind"] = support_name(e.subkind);
            ev["location2"] = point_json(e.loc2);
        }
        if (e.kind == EventKind::AntipodalPair || e.kind == EventKind::NormalTangentPair)
            ev["location2"] = point_json(e.loc2);
        events.push_back(ev);
    }
    json violations = json::array();
    for (const auto& v : a.violations)
        violations.push_back(
            {{"code", v.code}, {"t1", v.t1}, {"t2", v.t2}, {"detail", v.detail}});
    json residuals = json::object();
    for (const auto& [name, x2] : a.residuals_x2) residuals[name] = half_str(x2);
    json out{{"generic", a.generic},
             {"events", events},
             {"violations", violations},
             {"residuals", residuals}};
    if (a.generic) {
        out["counts"] = counts_json(a.counts);
        if (a.kbar_valid) out["kbar_counts"] = counts_json(a.kbar);
    }
    return out;
}

json curve_to_spec(const CurveModel& K, int nsamples) {
    const double L = K.period();
    std::vector<Vec3> pts(nsamples);
    std::vector<double> params(nsamples);
    for (int i = 0; i < nsamples; ++i) {
        params[i] = L * i / nsamples;
        pts[i] = K.pos(params[i]).normalized();
    }
    // chord-length knots, matching what from_samples will rebuild
    std::vector<double> knots(nsamples + 1);
    knots[0] = 0;
    for (int i = 0; i < nsamples; ++i) {
        double ang = std::acos(std::clamp(pts[i].dot(pts[(i + 1) % nsamples]), -1.0, 1.0));
        knots[i + 1] = knots[i] + std::max(ang, 1e-9);
    }
    json samples = json::array();
    for (const auto& p : pts) samples.push_back({p.x(), p.y(), p.z()});
    json cusps = json::array();
    for (double c : K.cusps()) {
        double cw = K.wrap(c);
        int i = std::min(nsamples - 1, int(cw / L * nsamples));
        double frac = (cw - params[i]) / (L / nsamples);
        cusps.push_back(knots[i] + frac * (knots[i + 1] - knots[i]));
    }
    return json{{"kind", "spherical"}, {"samples", samples}, {"cusps", cusps}};
}

std::string trace_csv(const CurveModel& K, const std::vector<Event>& events, bool vp,
                      const Config& cfg) {
    const double L = K.period();
    std::vector<double> params;
    for (const auto& e : events) {
        params.push_back(K.wrap(e.t1));
        params.push_back(K.wrap(e.t2));
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [&](double a, double b) { return std::abs(a - b) < 1e-9 * L; }),
                 params.end());
    std::vector<double> probes;
    if (params.empty()) {
        for (int i = 0; i < 16; ++i) probes.push_back(L * (i + 0.5) / 16);
    } else {
        for (size_t k = 0; k < params.size(); ++k) {
            double lo = params[k];
            double hi = (k + 1 < params.size()) ? params[k + 1] : params[0] + L;
            probes.push_back(K.wrap(0.5 * (lo + hi)));
        }
    }
    std::string out = vp ? "t,Wp,Bp,Vp\n" : "t,Mp_plus,Mp_minus,Mp\n";
    char buf[128];
    for (double t : probes) {
        try {
            TraceSample s = vp ? trace_Vp(K, t, cfg) : trace_Mp(K, t, cfg);
            if (vp)
                std::snprintf(buf, sizeof buf, "%.9f,%d,%d,%d\n", s.t, s.Wp, s.Bp, s.Vp);
            else
                std::snprintf(buf, sizeof buf, "%.9f,%d,%d,%d\n", s.t, s.Mp_plus,
                              s.Mp_minus, s.Mp);
            out += buf;
        } catch (const Error&) {
            // probe landed on a singular parameter; skip the row
        }
    }
    return out;
}

} // namespace fbc
