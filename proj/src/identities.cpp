#include "fbcount/identities.hpp"

#include <algorithm>
#include <cmath>

namespace fbc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* identity_name(IdentityMode m) {
    switch (m) {
        case IdentityMode::Theorem1: return "theorem1";
        case IdentityMode::Theorem3: return "theorem3";
        case IdentityMode::Theorem4: return "theorem4";
        case IdentityMode::Corollary5a: return "corollary5a";
        case IdentityMode::Corollary5b: return "corollary5b";
    }
    return "?";
}

std::string half_str(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

CountReport count_report(const CurveModel& K, const std::vector<Event>& events) {
    CountReport r;
    for (const auto& e : events) {
        switch (e.kind) {
            case EventKind::Inflection:
                ++r.I;
                continue;
            case EventKind::Cusp:
                ++r.U;
                continue;
            default:
                break;
        }
        if (e.type_label != 1 && e.type_label != 2)
            fail(Err::UnclassifiedEvent, std::string("unclassified ") + kind_name(e.kind) +
                                             " at t=" + std::to_string(e.t1));
        bool one = e.type_label == 1;
        switch (e.kind) {
            case EventKind::Crossing: (one ? r.C1 : r.C2)++; break;
            case EventKind::DoubleSupporting:
                (one ? r.T1 : r.T2)++;
                if (e.subkind == SupportKind::TangentTangent) (one ? r.T1_tt : r.T2_tt)++;
                break;
            case EventKind::AntipodalPair: (one ? r.A1 : r.A2)++; break;
            case EventKind::NormalTangentPair: (one ? r.N1 : r.N2)++; break;
            default: break;
        }
    }
    return r;
}

int evaluate_identity_x2(const CountReport& r, IdentityMode mode) {
    switch (mode) {
        case IdentityMode::Theorem1:
            return 2 * (r.T1 - r.T2) - (2 * (r.C1 + r.C2) + r.I + 2 * r.U - r.A1 + r.A2);
        case IdentityMode::Theorem3:
            if (r.I != 0)
                fail(Err::PreconditionViolated, "theorem3 requires no inflection points");
            return 2 * (r.C1 - r.C2) - (2 * (r.T1_tt + r.T2_tt) + r.U - r.N1 + r.N2);
        case IdentityMode::Theorem4:
            if (!r.kbar)
                fail(Err::PreconditionViolated, "theorem4 applies to augmented counts only");
            return 2 * (r.C1 - r.C2) -
                   (2 * (r.T1_tt + r.T2_tt) + r.U + 2 * r.I - r.N1 + r.N2);
        case IdentityMode::Corollary5a:
        case IdentityMode::Corollary5b:
            if (r.U != 0 || r.I != 0 || r.A1 != 0 || r.A2 != 0)
                fail(Err::PreconditionViolated,
                     "corollary requires no cusps, inflections, or antipodal pairs");
            if (mode == IdentityMode::Corollary5a)
                return 2 * (4 * r.T1 - 4 * r.C1 - (r.N1 - r.N2));
            return 2 * (4 * r.T2 + 4 * r.C2 - (r.N1 - r.N2));
    }
    fail(Err::PreconditionViolated, "unknown identity");
}

// ---------------------------------------------------------------------------

TraceSample trace_Mp(const CurveModel& K, double t, const Config& cfg) {
    const double L = K.period();
    FramedPoint f = frame_at(K, t, cfg);
    Vec3 w = f.gamma.cross(f.T);  // plane normal of tau_p
    auto h = [&](double u) { return K.pos(u).dot(w); };
    TraceSample s;
    s.t = K.wrap(t);
    for (double u : scalar_roots(h, L, {t}, cfg.delta_cusp_frac * L, cfg)) {
        Vec3 x = K.pos(u);
        double phi = std::atan2(x.dot(f.T), x.dot(f.gamma));
        phi = std::fmod(phi, kPi);
        if (phi < 0) phi += kPi;  // arc position on tau_p from p, in [0, pi)
        // guard only against exact coincidence with p or a_p; near a cusp the
        // opposite branch legitimately crosses tau_p at tiny but nonzero phi
        const double guard = 1e-9;
        if (phi < guard || kPi - phi < guard || std::abs(phi - kPi / 2) < guard)
            fail(Err::EventAtParameter,
                 "tau_p intersection at p or a_p: trace parameter sits on an event");
        (phi < kPi / 2 ? s.Mp_plus : s.Mp_minus)++;
    }
    s.Mp = s.Mp_plus - s.Mp_minus;
    return s;
}

TraceSample trace_Vp(const CurveModel& K, double t, const Config& cfg) {
    const double L = K.period();
    FramedPoint f = frame_at(K, t, cfg);
    auto h = [&](double u) { return f.gamma.dot(dual_lift(K, u)); };
    TraceSample s;
    s.t = K.wrap(t);
    for (double u :
         scalar_roots(h, L, {K.wrap(t)}, cfg.delta_cusp_frac * L, cfg, K.cusps())) {
        if (K.near_cusp(u, 1e-6 * L))
            fail(Err::AtCusp, "tangent from p touches K at a cusp");
        Vec3 wq = dual_lift(K, u);
        Vec3 dir = wq.cross(f.gamma);  // direction at p of the geodesic tangent at q
        if (dir.norm() < 1e-9)
            fail(Err::DirectionOnAxis, "p coincides with the pole of tau_q");
        dir.normalize();
        double a = dir.dot(f.T), b = dir.dot(f.n);
        if (std::abs(a) < cfg.tol_ang || std::abs(b) < cfg.tol_ang)
            fail(Err::DirectionOnAxis, "tangent-from-p direction on a frame axis");
        (a * b > 0 ? s.Wp : s.Bp)++;
    }
    s.Vp = s.Wp - s.Bp;
    return s;
}

// ---------------------------------------------------------------------------

namespace {

struct Occurrence {
    double param;
    int event_index;
};

std::vector<Occurrence> event_params(const CurveModel& K, const std::vector<Event>& events) {
    std::vector<Occurrence> occ;
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        occ.push_back({K.wrap(e.t1), int(i)});
        bool pair = e.kind == EventKind::Crossing || e.kind == EventKind::DoubleSupporting ||
                    e.kind == EventKind::AntipodalPair ||
                    e.kind == EventKind::NormalTangentPair;
        if (pair && K.param_dist(e.t1, e.t2) > 1e-12) occ.push_back({K.wrap(e.t2), int(i)});
    }
    std::sort(occ.begin(), occ.end(),
              [](const Occurrence& a, const Occurrence& b) { return a.param < b.param; });
    return occ;
}

TraceLedger build_ledger(const CurveModel& K, const std::vector<Event>& events,
                         bool vp, const Config& cfg) {
    auto value = [&](double t) {
        return vp ? trace_Vp(K, t, cfg).Vp : trace_Mp(K, t, cfg).Mp;
    };
    auto sample = [&](double lo, double gap, double frac) {
        const double alt[8] = {0.0, 0.45, 0.55, 0.25, 0.75, 0.15, 0.85, 0.5};
        for (int tries = 0; tries < 8; ++tries) {
            try {
                double f = tries == 0 ? frac : alt[tries];
                return value(K.wrap(lo + gap * f));
            } catch (const Error&) {
                // slide the probe elsewhere inside the interval
            }
        }
        fail(Err::EventAtParameter, "no usable trace parameter inside event interval");
    };
    auto occ = event_params(K, events);
    TraceLedger ledger;
    if (occ.empty()) return ledger;
    const double L = K.period();
    const size_t n = occ.size();
    // one value per inter-event interval, probed at two spots as a
    // missed-event detector
    std::vector<int> vals(n);
    for (size_t k = 0; k < n; ++k) {
        double lo = occ[k].param;
        double hi = (k + 1 < n) ? occ[k + 1].param : occ[0].param + L;
        double gap = hi - lo;
        if (gap < 1e-9 * L) {
            vals[k] = (k > 0) ? vals[k - 1] : 0;  // coincident params: handled below
            continue;
        }
        int va = sample(lo, gap, 0.35);
        int vb = sample(lo, gap, 0.65);
        if (va != vb)
            fail(Err::EventAtParameter,
                 "trace jumps inside an event-free interval: missed event near t=" +
                     std::to_string(K.wrap(lo + 0.5 * gap)));
        vals[k] = va;
    }
    for (size_t k = 0; k < n; ++k) {
        int before = vals[(k + n - 1) % n];
        int after = vals[k];
        ledger.entries.push_back({occ[k].param, occ[k].event_index, after - before});
        ledger.net += after - before;
    }
    return ledger;
}

} // namespace

TraceLedger mp_ledger(const CurveModel& K, const std::vector<Event>& events,
                      const Config& cfg) {
    return build_ledger(K, events, false, cfg);
}

TraceLedger vp_ledger(const CurveModel& K, const std::vector<Event>& events,
                      const Config& cfg) {
    return build_ledger(K, events, true, cfg);
}

int ledger_event_total(const TraceLedger& ledger, int event_index) {
    int total = 0;
    for (const auto& e : ledger.entries)
        if (e.event_index == event_index) total += e.jump;
    return total;
}

} // namespace fbc
