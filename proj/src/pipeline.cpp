#include "fbcount/pipeline.hpp"

#include "fbcount/classify.hpp"

namespace fbc {

namespace {

// Errors that mean "the curve violates genericity", not "the engine failed".
bool genericity_error(Err e) {
    switch (e) {
        case Err::NearHalfPi:
        case Err::DoubleZero:
        case Err::Type2Cusp:
        case Err::TangentialContact:
        case Err::MixedSideAtTangency:
        case Err::CenterHit:
        case Err::OnBoundary:
        case Err::SectorAmbiguous:
        case Err::BendUnstable:
        case Err::DirectionOnAxis:
        case Err::AtCusp:
        case Err::AtInflection:
            return true;
        default:
            return false;
    }
}

} // namespace

Analysis analyze(const CurveModel& K, const Config& cfg) {
    Analysis a;
    auto guard = [&](auto&& fn, double t1 = 0, double t2 = 0) {
        try {
            fn();
        } catch (const Error& err) {
            if (!genericity_error(err.code())) throw;
            a.violations.push_back({err_name(err.code()), t1, t2, err.what()});
        }
    };

    guard([&] {
        auto v = find_crossings(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });
    guard([&] {
        auto v = find_inflections(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });
    guard([&] {
        auto v = find_cusps(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });
    guard([&] {
        auto v = find_double_supporting(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });
    guard([&] {
        auto v = find_antipodal_pairs(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });
    guard([&] {
        auto v = find_normal_tangent_pairs(K, cfg);
        a.events.insert(a.events.end(), v.begin(), v.end());
    });

    for (auto& e : a.events) {
        guard(
            [&] {
                switch (e.kind) {
                    case EventKind::Crossing:
                        e.type_label = classify_crossing(K, e, cfg);
                        break;
                    case EventKind::DoubleSupporting:
                        e.type_label = classify_double_supporting(K, e, cfg);
                        break;
                    case EventKind::AntipodalPair:
                        e.type_label = classify_antipodal_pair(K, e, cfg);
                        break;
                    case EventKind::NormalTangentPair:
                        e.type_label = classify_normal_tangent_pair(K, e, cfg);
                        break;
                    default:
                        break;
                }
            },
            e.t1, e.t2);
    }

    for (const auto& v : check_genericity(K, a.events, cfg)) a.violations.push_back(v);
    a.generic = a.violations.empty();
    if (!a.generic) return a;  // report marked non-generic, no residuals

    a.counts = count_report(K, a.events);
    guard([&] {
        AugmentedModel am = build_kbar(K, cfg);
        a.kbar = kbar_counts(am, a.events, cfg);
        a.kbar_valid = true;
    });
    a.generic = a.violations.empty();
    if (!a.generic) return a;

    a.residuals_x2[identity_name(IdentityMode::Theorem1)] =
        evaluate_identity_x2(a.counts, IdentityMode::Theorem1);
    if (a.counts.I == 0)
        a.residuals_x2[identity_name(IdentityMode::Theorem3)] =
            evaluate_identity_x2(a.counts, IdentityMode::Theorem3);
    if (a.kbar_valid)
        a.residuals_x2[identity_name(IdentityMode::Theorem4)] =
            evaluate_identity_x2(a.kbar, IdentityMode::Theorem4);
    if (a.counts.U == 0 && a.counts.I == 0 && a.counts.A1 == 0 && a.counts.A2 == 0) {
        a.residuals_x2[identity_name(IdentityMode::Corollary5a)] =
            evaluate_identity_x2(a.counts, IdentityMode::Corollary5a);
        a.residuals_x2[identity_name(IdentityMode::Corollary5b)] =
            evaluate_identity_x2(a.counts, IdentityMode::Corollary5b);
    }
    return a;
}

bool all_residuals_zero(const Analysis& a) {
    if (!a.generic) return false;
    for (const auto& [k, v] : a.residuals_x2)
        if (v != 0) return false;
    return true;
}

} // namespace fbc
