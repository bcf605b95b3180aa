#pragma once

#include <stdexcept>
#include <string>

namespace fbc {

enum class Err {
    DegeneratePair,
    PointNotOnGeodesic,
    OnBoundary,
    TooFewSamples,
    GapTooLarge,
    NotClosed,
    EmptyInput,
    AtCusp,
    AtInflection,
    RefinementDiverged,
    TangentialContact,
    DoubleZero,
    Type2Cusp,
    VelocityNotZero,
    NearHalfPi,
    SectorAmbiguous,
    MixedSideAtTangency,
    CenterHit,
    DirectionOnAxis,
    EventAtParameter,
    UnclassifiedEvent,
    PreconditionViolated,
    BendUnstable,
    ResolutionTooLow,
    BadSpec,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }
private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace fbc
