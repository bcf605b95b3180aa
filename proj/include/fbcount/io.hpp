#pragma once

#include <string>

#include <json.hpp>

#include "fbcount/pipeline.hpp"

namespace fbc {

// Curve spec: {"kind": "spherical"|"planar"|"builtin",
//              "samples": [[x,y,z]...] | [[x,y]...],
//              "cusps": [t...],
//              "margin": radians (planar only),
//              "builtin": {"name": ..., "params": {...}}}
// Throws BadSpec naming the offending field.
CurveModel load_spec(const nlohmann::json& spec, const Config& cfg = {});
CurveModel load_spec_file(const std::string& path, const Config& cfg = {});

// Optional {"config": {...}} block overriding the defaults.
Config config_from_json(const nlohmann::json& j, const Config& base = {});

nlohmann::json report_json(const Analysis& a);

// Spherical spec (samples + cusps) reproducing K, e.g. for the dual curve.
nlohmann::json curve_to_spec(const CurveModel& K, int nsamples);

// CSV step functions: t,Mp_plus,Mp_minus,Mp or t,Wp,Bp,Vp, sampled at
// midpoints between consecutive event parameters.
std::string trace_csv(const CurveModel& K, const std::vector<Event>& events,
                      bool vp, const Config& cfg = {});

} // namespace fbc
