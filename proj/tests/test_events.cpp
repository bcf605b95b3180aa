#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "common.hpp"

using namespace fbc;

namespace {
constexpr double kPi = 3.14159265358979323846;

int count_kind(const std::vector<Event>& ev, EventKind k) {
    return int(std::count_if(ev.begin(), ev.end(),
                             [&](const Event& e) { return e.kind == k; }));
}
} // namespace

TEST_CASE("scalar_roots finds simple roots of a periodic function") {
    Config cfg;
    auto h = [](double t) { return std::sin(3 * t - 0.4); };
    auto roots = scalar_roots(h, 2 * kPi, {}, 0.0, cfg);
    REQUIRE(roots.size() == 6);
    std::sort(roots.begin(), roots.end());
    for (size_t i = 0; i < roots.size(); ++i)
        CHECK(roots[i] == doctest::Approx((i * kPi + 0.4) / 3).epsilon(1e-8));
}

TEST_CASE("scalar_roots skips exclusion windows") {
    Config cfg;
    auto h = [](double t) { return std::cos(t); };
    auto all = scalar_roots(h, 2 * kPi, {}, 0.0, cfg);
    CHECK(all.size() == 2);
    auto some = scalar_roots(h, 2 * kPi, {kPi / 2}, 0.1, cfg);
    REQUIRE(some.size() == 1);
    CHECK(some[0] == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("scalar_roots treats declared flips as sign discontinuities, not roots") {
    Config cfg;
    // cos(t) with an artificial sign flip on [1, 4): without the flip
    // declaration the jumps at 1 and 4 bracket like roots
    auto h = [](double t) {
        double s = (t >= 1.0 && t < 4.0) ? -1.0 : 1.0;
        return s * std::cos(t);
    };
    auto naive = scalar_roots(h, 2 * kPi, {}, 0.0, cfg);
    CHECK(naive.size() == 4);  // two genuine roots plus the two jumps
    auto aware = scalar_roots(h, 2 * kPi, {}, 0.0, cfg, {1.0, 4.0});
    REQUIRE(aware.size() == 2);
    std::sort(aware.begin(), aware.end());
    CHECK(aware[0] == doctest::Approx(kPi / 2).epsilon(1e-8));
    CHECK(aware[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-8));
}

TEST_CASE("scalar_roots reports an unmatched sign change at a flip as a root there") {
    Config cfg;
    // positive function with a single flip: the only sign change is the flip
    auto h = [](double t) { return (t >= 2.0 && t < 5.0) ? -1.5 : 1.5; };
    auto roots = scalar_roots(h, 2 * kPi, {}, 0.0, cfg, {2.0});
    // the flip at 2.0 is matched (no root); the jump at 5.0 is a genuine
    // undeclared sign change and brackets to a root
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("pair_scan finds the crossing of a figure-eight") {
    Config cfg;
    CurveModel K = fbtest::builtin("eight", {}, cfg);
    auto ev = find_crossings(K, cfg);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::Crossing);
    CHECK(ev[0].t1 < ev[0].t2);
    // both parameters map to the same projective point
    CHECK(proj_distance(K.pos(ev[0].t1), K.pos(ev[0].t2)) < 1e-7);
}

TEST_CASE("event detectors reproduce the frozen per-kind counts") {
    Config cfg;
    for (const auto& fx : fbtest::roster()) {
        CAPTURE(fbtest::roster_tag(fx));
        CurveModel K = fbtest::builtin(fx.name, fx.params, cfg);
        auto ev = find_all_events(K, cfg);
        CHECK(count_kind(ev, EventKind::Crossing) == fx.expect.C1 + fx.expect.C2);
        CHECK(count_kind(ev, EventKind::DoubleSupporting) ==
              fx.expect.T1 + fx.expect.T2);
        CHECK(count_kind(ev, EventKind::Inflection) == fx.expect.I);
        CHECK(count_kind(ev, EventKind::Cusp) == fx.expect.U);
        CHECK(count_kind(ev, EventKind::AntipodalPair) == fx.expect.A1 + fx.expect.A2);
        CHECK(count_kind(ev, EventKind::NormalTangentPair) ==
              fx.expect.N1 + fx.expect.N2);
    }
}

TEST_CASE("double supporting geodesics carry their subkind and pole") {
    Config cfg;
    CurveModel K = fbtest::builtin("cusped_hypocycloid", {{"cusps", 2.0}}, cfg);
    auto ev = find_double_supporting(K, cfg);
    int tt = 0, involving_cusp = 0;
    for (const auto& e : ev) {
        REQUIRE(e.kind == EventKind::DoubleSupporting);
        CHECK(e.subkind != SupportKind::None);
        if (e.subkind == SupportKind::TangentTangent)
            ++tt;
        else
            ++involving_cusp;
        // the supporting geodesic passes through both contact points
        CHECK(std::abs(e.support_pole.dot(K.pos(e.t1))) < 1e-6);
        CHECK(std::abs(e.support_pole.dot(K.pos(e.t2))) < 1e-6);
        // and is tangent at tangential contacts
        if (e.subkind == SupportKind::TangentTangent) {
            CHECK(std::abs(e.support_pole.dot(indicatrix_lift(K, e.t1))) < 1e-6);
            CHECK(std::abs(e.support_pole.dot(indicatrix_lift(K, e.t2))) < 1e-6);
        }
    }
    CHECK(tt == 3);
    CHECK(involving_cusp == 3);
}

TEST_CASE("antipodal pairs satisfy their defining condition") {
    Config cfg;
    CurveModel K = fbtest::builtin("wavy_great_circle", {}, cfg);
    auto ev = find_antipodal_pairs(K, cfg);
    REQUIRE(ev.size() == 12);
    for (const auto& e : ev) {
        // gamma(t2) lies on the tangent great circle at t1 at distance pi/2
        // from gamma(t1): it coincides projectively with the tangent direction
        CHECK(proj_distance(K.pos(e.t2), indicatrix_lift(K, e.t1)) < 1e-6);
    }
}

TEST_CASE("normal tangent pairs satisfy their defining condition") {
    Config cfg;
    CurveModel K = fbtest::builtin("fig7_left", {}, cfg);
    auto ev = find_normal_tangent_pairs(K, cfg);
    REQUIRE(ev.size() == 4);
    for (const auto& e : ev) {
        FramedPoint f = frame_at(K, e.t1, cfg);
        // the normal geodesic at p (pole = tangent at p) is tangent to K at q
        CHECK(std::abs(f.T.dot(K.pos(e.t2))) < 1e-6);
        CHECK(std::abs(f.T.dot(indicatrix_lift(K, e.t2))) < 1e-6);
    }
}

TEST_CASE("event parameters are deduplicated and ordered") {
    Config cfg;
    CurveModel K = fbtest::builtin("wavy_great_circle", {}, cfg);
    auto ev = find_all_events(K, cfg);
    for (const auto& e : ev) {
        if (e.kind == EventKind::Crossing || e.kind == EventKind::DoubleSupporting)
            CHECK(e.t1 < e.t2);
        CHECK(e.t1 >= 0);
        CHECK(e.t1 < K.period());
    }
}
