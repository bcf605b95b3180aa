#pragma once

#include <optional>
#include <string>

#include "fbcount/events.hpp"

namespace fbc {

// The ten counters.  Residuals are computed by evaluate_identity_x2 as exact
// doubled integers (the identities contain halves).
struct CountReport {
    int T1 = 0, T2 = 0, C1 = 0, C2 = 0, I = 0, U = 0, A1 = 0, A2 = 0, N1 = 0, N2 = 0;
    // Proper double tangencies only (tangent-tangent subkind), by type.
    // Theorem 1's intersection count sees every supporting geodesic, but the
    // tangent-from-a-point count behind the dual identities is blind to
    // supporting geodesics through cusps: the tangency point slides through
    // the cusp with the tangent geodesic turning continuously, so nothing
    // appears or changes color.  Theorems 3 and 4 therefore count only the
    // tangent-tangent kind (verified against the V_p jump ledger).
    int T1_tt = 0, T2_tt = 0;
    bool kbar = false;

    bool operator==(const CountReport&) const = default;
};

enum class IdentityMode { Theorem1, Theorem3, Theorem4, Corollary5a, Corollary5b };

const char* identity_name(IdentityMode m);

CountReport count_report(const CurveModel& K, const std::vector<Event>& events);

// Left minus right, doubled.  Throws PreconditionViolated when the identity's
// hypotheses fail for this report (Theorem3: I = 0; Theorem4: kbar counts;
// Corollary: U = I = A1 = A2 = 0).
int evaluate_identity_x2(const CountReport& r, IdentityMode mode);

// Doubled integer -> "0", "3/2", "-1/2", ...
std::string half_str(int doubled);

struct TraceSample {
    double t = 0;
    int Mp_plus = 0, Mp_minus = 0, Mp = 0;
    int Wp = 0, Bp = 0, Vp = 0;
};

TraceSample trace_Mp(const CurveModel& K, double t, const Config& cfg = {});
TraceSample trace_Vp(const CurveModel& K, double t, const Config& cfg = {});

// Jump ledger: the trace evaluated at midpoints between consecutive event
// parameters; each jump is attributed to the event parameter it straddles.
struct LedgerEntry {
    double param = 0;
    int event_index = -1;  // into the events list passed in
    int jump = 0;
};

struct TraceLedger {
    std::vector<LedgerEntry> entries;
    int net = 0;  // sum of jumps over one period (must be 0)
};

TraceLedger mp_ledger(const CurveModel& K, const std::vector<Event>& events,
                      const Config& cfg = {});
TraceLedger vp_ledger(const CurveModel& K, const std::vector<Event>& events,
                      const Config& cfg = {});

// Sum of ledger jumps attributed to one event, over all its parameter roles.
int ledger_event_total(const TraceLedger& ledger, int event_index);

} // namespace fbc
