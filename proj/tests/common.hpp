#pragma once

// Shared fixture helpers for the test binaries.
//
// The expected counts below were frozen after cross-validating three
// independent routes on every fixture: the detection pipeline, the
// brute-force polyline/proximity oracle, and the Mp/Vp jump ledgers
// (every jump attributed, nets zero).  A change that breaks one of these
// numbers is a regression, not a new baseline.

#include <map>
#include <string>
#include <vector>

#include "fbcount/classify.hpp"
#include "fbcount/pipeline.hpp"

namespace fbtest {

inline fbc::CurveModel builtin(const std::string& name,
                               std::map<std::string, double> pm = {},
                               const fbc::Config& cfg = {}) {
    return fbc::make_builtin(
        name,
        [pm](const std::string& key, double dflt) {
            auto it = pm.find(key);
            return it == pm.end() ? dflt : it->second;
        },
        cfg);
}

struct RosterEntry {
    std::string name;
    std::map<std::string, double> params;
    fbc::CountReport expect;
};

// C1 C2 T1 T2 T1_tt T2_tt I U A1 A2 N1 N2
inline fbc::CountReport counts(int C1, int C2, int T1, int T2, int T1tt, int T2tt,
                               int I, int U, int A1, int A2, int N1, int N2) {
    fbc::CountReport r;
    r.C1 = C1; r.C2 = C2; r.T1 = T1; r.T2 = T2;
    r.T1_tt = T1tt; r.T2_tt = T2tt;
    r.I = I; r.U = U; r.A1 = A1; r.A2 = A2; r.N1 = N1; r.N2 = N2;
    return r;
}

inline const std::vector<RosterEntry>& roster() {
    static const std::vector<RosterEntry> r = {
        {"latitude_circle", {}, counts(0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)},
        {"ellipse", {}, counts(0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)},
        {"fig7_right", {}, counts(1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0)},
        {"fig7_left", {}, counts(0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 4, 0)},
        {"limacon", {{"b", 0.55}}, counts(1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 2, 2)},
        {"limacon", {}, counts(1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 2, 2)},
        {"eight", {}, counts(1, 0, 2, 0, 2, 0, 2, 0, 0, 0, 8, 0)},
        {"bean", {}, counts(0, 0, 1, 0, 1, 0, 2, 0, 0, 0, 0, 0)},
        {"two_dent", {}, counts(0, 0, 2, 0, 2, 0, 4, 0, 0, 0, 0, 0)},
        {"wavy_great_circle", {}, counts(4, 0, 2, 1, 2, 1, 6, 0, 12, 0, 0, 0)},
        {"cusped_hypocycloid", {{"cusps", 1.0}}, counts(0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 3, 0)},
        {"cusped_hypocycloid", {{"cusps", 2.0}}, counts(0, 0, 4, 2, 3, 0, 0, 2, 0, 0, 8, 0)},
        {"cusped_hypocycloid", {{"cusps", 3.0}}, counts(0, 0, 9, 6, 6, 0, 0, 3, 0, 0, 15, 0)},
    };
    return r;
}

inline std::string roster_tag(const RosterEntry& e) {
    std::string tag = e.name;
    for (const auto& [k, v] : e.params) tag += " " + k + "=" + std::to_string(v);
    return tag;
}

inline std::vector<fbc::Event> classified_events(const fbc::CurveModel& K,
                                                 const fbc::Config& cfg = {}) {
    auto ev = fbc::find_all_events(K, cfg);
    fbc::classify_all(K, ev, cfg);
    return ev;
}

} // namespace fbtest
