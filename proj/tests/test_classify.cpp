#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

using namespace fbc;

TEST_CASE("classification reproduces the frozen typed counts on every fixture") {
    Config cfg;
    for (const auto& fx : fbtest::roster()) {
        CAPTURE(fbtest::roster_tag(fx));
        CurveModel K = fbtest::builtin(fx.name, fx.params, cfg);
        auto ev = fbtest::classified_events(K, cfg);
        CountReport r = count_report(K, ev);
        CHECK(r.C1 == fx.expect.C1);
        CHECK(r.C2 == fx.expect.C2);
        CHECK(r.T1 == fx.expect.T1);
        CHECK(r.T2 == fx.expect.T2);
        CHECK(r.T1_tt == fx.expect.T1_tt);
        CHECK(r.T2_tt == fx.expect.T2_tt);
        CHECK(r.I == fx.expect.I);
        CHECK(r.U == fx.expect.U);
        CHECK(r.A1 == fx.expect.A1);
        CHECK(r.A2 == fx.expect.A2);
        CHECK(r.N1 == fx.expect.N1);
        CHECK(r.N2 == fx.expect.N2);
    }
}

TEST_CASE("every classified event carries a definite type label") {
    Config cfg;
    for (const auto& fx : fbtest::roster()) {
        CAPTURE(fbtest::roster_tag(fx));
        CurveModel K = fbtest::builtin(fx.name, fx.params, cfg);
        for (const auto& e : fbtest::classified_events(K, cfg)) {
            if (e.kind == EventKind::Inflection) continue;  // untyped by design
            if (e.kind == EventKind::Cusp) {
                CHECK(e.type_label == 1);  // all builtin cusps are type 1
                continue;
            }
            CHECK((e.type_label == 1 || e.type_label == 2));
        }
    }
}

TEST_CASE("labels are stable under probe-offset halving") {
    Config cfg;
    Config half = cfg;
    half.eps_frac = cfg.eps_frac / 2;
    for (const auto& fx : fbtest::roster()) {
        CAPTURE(fbtest::roster_tag(fx));
        CurveModel K = fbtest::builtin(fx.name, fx.params, cfg);
        auto a = fbtest::classified_events(K, cfg);
        auto b = fbtest::classified_events(K, half);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].kind == b[i].kind);
            CHECK(a[i].type_label == b[i].type_label);
        }
    }
}

TEST_CASE("single-event classifiers agree with classify_all") {
    Config cfg;
    CurveModel K = fbtest::builtin("fig7_left", {}, cfg);
    auto ev = find_all_events(K, cfg);
    auto all = ev;
    classify_all(K, all, cfg);
    for (size_t i = 0; i < ev.size(); ++i) {
        int label = 0;
        switch (ev[i].kind) {
            case EventKind::Crossing: label = classify_crossing(K, ev[i], cfg); break;
            case EventKind::DoubleSupporting:
                label = classify_double_supporting(K, ev[i], cfg);
                break;
            case EventKind::AntipodalPair:
                label = classify_antipodal_pair(K, ev[i], cfg);
                break;
            case EventKind::NormalTangentPair:
                label = classify_normal_tangent_pair(K, ev[i], cfg);
                break;
            default: continue;
        }
        CHECK(label == all[i].type_label);
    }
}

TEST_CASE("mirror pair: the two worked curves carry opposite crossing types") {
    Config cfg;
    auto right = count_report(fbtest::builtin("fig7_right", {}, cfg),
                              fbtest::classified_events(fbtest::builtin("fig7_right", {}, cfg), cfg));
    auto left = count_report(fbtest::builtin("fig7_left", {}, cfg),
                             fbtest::classified_events(fbtest::builtin("fig7_left", {}, cfg), cfg));
    CHECK(right.C1 == 1);
    CHECK(right.C2 == 0);
    CHECK(left.C1 == 0);
    CHECK(left.C2 == 1);
    // both have one type-1 double supporting geodesic
    CHECK(right.T1 == 1);
    CHECK(left.T1 == 1);
}
