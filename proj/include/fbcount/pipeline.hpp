#pragma once

#include <map>

#include "fbcount/genericity.hpp"
#include "fbcount/identities.hpp"
#include "fbcount/kbar.hpp"

namespace fbc {

struct Analysis {
    std::vector<Event> events;       // classified
    CountReport counts;              // plain-K counts
    CountReport kbar;                // augmented counts (== counts when I = 0)
    bool kbar_valid = false;
    std::vector<Violation> violations;
    bool generic = false;
    // identity name -> doubled residual, only the applicable ones
    std::map<std::string, int> residuals_x2;
};

// Full pipeline: detect, classify, genericity-check, augment, and evaluate
// every applicable identity.  Residuals are only filled when the curve is
// generic.
Analysis analyze(const CurveModel& K, const Config& cfg = {});

// True iff every residual present is zero (and the curve was generic).
bool all_residuals_zero(const Analysis& a);

} // namespace fbc
