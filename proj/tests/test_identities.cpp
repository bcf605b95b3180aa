#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "common.hpp"

using namespace fbc;

TEST_CASE("half_str renders doubled integers as halves") {
    CHECK(half_str(0) == "0");
    CHECK(half_str(4) == "2");
    CHECK(half_str(3) == "3/2");
    CHECK(half_str(-1) == "-1/2");
    CHECK(half_str(-6) == "-3");
}

TEST_CASE("count_report refuses unclassified events") {
    Config cfg;
    CurveModel K = fbtest::builtin("eight", {}, cfg);
    auto ev = find_all_events(K, cfg);  // deliberately not classified
    CHECK_THROWS_AS(count_report(K, ev), Error);
}

TEST_CASE("identity preconditions are enforced") {
    CountReport r;
    r.I = 2;
    CHECK_THROWS_AS(evaluate_identity_x2(r, IdentityMode::Theorem3), Error);
    CHECK_THROWS_AS(evaluate_identity_x2(r, IdentityMode::Corollary5a), Error);
    r.I = 0;
    r.U = 1;
    CHECK_THROWS_AS(evaluate_identity_x2(r, IdentityMode::Corollary5b), Error);
    r.U = 0;
    CHECK(!r.kbar);
    CHECK_THROWS_AS(evaluate_identity_x2(r, IdentityMode::Theorem4), Error);
}

TEST_CASE("identity formulas on hand-built reports") {
    // a single type-1 crossing with one type-1 double tangent: balanced
    CountReport r = fbtest::counts(1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0);
    CHECK(evaluate_identity_x2(r, IdentityMode::Theorem1) == 0);
    CHECK(evaluate_identity_x2(r, IdentityMode::Theorem3) == 0);
    CHECK(evaluate_identity_x2(r, IdentityMode::Corollary5a) == 0);
    CHECK(evaluate_identity_x2(r, IdentityMode::Corollary5b) == 0);
    // removing the double tangent unbalances both sides by the same amount
    CountReport s = fbtest::counts(1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
    CHECK(evaluate_identity_x2(s, IdentityMode::Theorem1) == -2);
    CHECK(evaluate_identity_x2(s, IdentityMode::Theorem3) == 2);
}

TEST_CASE("all applicable residuals vanish on every fixture") {
    Config cfg;
    for (const auto& fx : fbtest::roster()) {
        CAPTURE(fbtest::roster_tag(fx));
        CurveModel K = fbtest::builtin(fx.name, fx.params, cfg);
        Analysis a = analyze(K, cfg);
        REQUIRE(a.generic);
        REQUIRE(a.residuals_x2.count("theorem1") == 1);
        for (const auto& [name, x2] : a.residuals_x2) {
            CAPTURE(name);
            CHECK(x2 == 0);
        }
        if (fx.expect.I == 0) CHECK(a.residuals_x2.count("theorem3") == 1);
        if (fx.expect.I > 0) CHECK(a.residuals_x2.count("theorem4") == 1);
        if (fx.expect.U == 0 && fx.expect.I == 0 && fx.expect.A1 + fx.expect.A2 == 0) {
            CHECK(a.residuals_x2.count("corollary5a") == 1);
            CHECK(a.residuals_x2.count("corollary5b") == 1);
        }
    }
}

TEST_CASE("trace values on a convex oval are identically zero") {
    Config cfg;
    CurveModel K = fbtest::builtin("ellipse", {}, cfg);
    for (double t : {0.2, 1.1, 2.9, 4.4}) {
        TraceSample m = trace_Mp(K, t, cfg);
        CHECK(m.Mp_plus == 0);
        CHECK(m.Mp_minus == 0);
        TraceSample v = trace_Vp(K, t, cfg);
        CHECK(v.Wp == 0);
        CHECK(v.Bp == 0);
    }
}

TEST_CASE("ledgers net to zero with per-event jumps matching the tables") {
    Config cfg;
    CurveModel K = fbtest::builtin("fig7_right", {}, cfg);
    auto ev = fbtest::classified_events(K, cfg);
    TraceLedger ml = mp_ledger(K, ev, cfg);
    TraceLedger vl = vp_ledger(K, ev, cfg);
    CHECK(ml.net == 0);
    CHECK(vl.net == 0);
    for (size_t i = 0; i < ev.size(); ++i) {
        int mj = ledger_event_total(ml, int(i));
        int vj = ledger_event_total(vl, int(i));
        if (ev[i].kind == EventKind::Crossing) {
            CHECK(mj == -4);
            CHECK(vj == +4);  // type-1 crossing
        } else {
            REQUIRE(ev[i].kind == EventKind::DoubleSupporting);
            CHECK(mj == +4);
            CHECK(vj == -4);  // type-1 tangent-tangent
        }
    }
}

TEST_CASE("antipodal events step the Mp trace by +2 for type 1") {
    Config cfg;
    CurveModel K = fbtest::builtin("wavy_great_circle", {}, cfg);
    auto ev = fbtest::classified_events(K, cfg);
    TraceLedger ml = mp_ledger(K, ev, cfg);
    CHECK(ml.net == 0);
    int antipodal_seen = 0;
    for (size_t i = 0; i < ev.size(); ++i) {
        if (ev[i].kind != EventKind::AntipodalPair) continue;
        ++antipodal_seen;
        CHECK(ledger_event_total(ml, int(i)) == (ev[i].type_label == 1 ? +2 : -2));
    }
    CHECK(antipodal_seen == 12);
}

TEST_CASE("normal-tangent pairs step the Vp trace by +2 for type 1") {
    Config cfg;
    CurveModel K = fbtest::builtin("fig7_left", {}, cfg);
    auto ev = fbtest::classified_events(K, cfg);
    TraceLedger vl = vp_ledger(K, ev, cfg);
    CHECK(vl.net == 0);
    for (size_t i = 0; i < ev.size(); ++i) {
        int j = ledger_event_total(vl, int(i));
        switch (ev[i].kind) {
            case EventKind::Crossing: CHECK(j == -4); break;           // type 2
            case EventKind::DoubleSupporting: CHECK(j == -4); break;   // tangent-tangent
            case EventKind::NormalTangentPair: CHECK(j == +2); break;  // type 1
            default: break;
        }
    }
}

TEST_CASE("supporting geodesics through cusps leave the Vp trace unchanged") {
    // the tangency point slides through the cusp while the tangent geodesic
    // turns continuously, so no tangent-from-p appears or changes color;
    // this is why the dual-side identities count tangent-tangent events only
    Config cfg;
    CurveModel K = fbtest::builtin("cusped_hypocycloid", {{"cusps", 2.0}}, cfg);
    auto ev = fbtest::classified_events(K, cfg);
    TraceLedger vl = vp_ledger(K, ev, cfg);
    CHECK(vl.net == 0);
    const double L = K.period();
    // jumps away from cusp parameters: -4 per tangent-tangent support, +2 per
    // normal-tangent pair; each cusp parameter cluster sums to -2
    for (double c : K.cusps()) {
        int cluster = 0;
        for (const auto& entry : vl.entries)
            if (K.param_dist(entry.param, c) < cfg.delta_cusp_frac * L)
                cluster += entry.jump;
        CHECK(cluster == -2);
    }
    for (size_t i = 0; i < ev.size(); ++i) {
        if (ev[i].kind == EventKind::DoubleSupporting &&
            ev[i].subkind == SupportKind::TangentTangent)
            CHECK(ledger_event_total(vl, int(i)) == -4);
        if (ev[i].kind == EventKind::NormalTangentPair)
            CHECK(ledger_event_total(vl, int(i)) == +2);
    }
}
