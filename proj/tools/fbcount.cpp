#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fbcount/io.hpp"
#include "fbcount/oracle.hpp"
#include "fbcount/svg.hpp"

namespace {

using nlohmann::json;

struct Common {
    std::string spec_path;
    std::string config_path;
    int threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("spec", c.spec_path, "curve spec JSON file")->required();
    cmd->add_option("--config", c.config_path, "JSON file overriding numerical defaults");
    cmd->add_option("--threads", c.threads,
                    "worker thread cap (fallback: FBCOUNT_THREADS, then hardware)");
}

fbc::Config make_config(const Common& c) {
    fbc::Config cfg;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) fbc::fail(fbc::Err::BadSpec, "cannot open config file '" + c.config_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fbc::fail(fbc::Err::BadSpec, std::string("config file is not valid JSON: ") + e.what());
        }
        cfg = fbc::config_from_json(j.value("config", j), cfg);
    }
    if (c.threads > 0) cfg.threads = c.threads;
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fbc::fail(fbc::Err::BadSpec, "cannot write output file '" + path + "'");
    out << content;
}

int exit_code_for(const fbc::Analysis& a) {
    if (!a.generic) return 3;
    for (const auto& [name, x2] : a.residuals_x2)
        if (x2 != 0) return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fbcount: closed-curve singularity counts in the projective plane.\n"
        "Detects crossings, double supporting geodesics, inflections, cusps,\n"
        "antipodal and normal-tangent pairs, classifies them, and verifies the\n"
        "counting identities with exact half-integer residuals.\n"
        "Exit codes: 0 generic and all residuals zero, 1 malformed spec,\n"
        "2 nonzero residual, 3 non-generic input."};
    app.require_subcommand(1);

    Common c_analyze, c_dual, c_trace, c_oracle, c_check;
    std::string json_out, svg_out;
    auto* analyze = app.add_subcommand("analyze", "full pipeline: detect, classify, verify");
    add_common(analyze, c_analyze);
    analyze->add_option("--json", json_out, "write the report JSON here");
    analyze->add_option("--svg", svg_out, "write a disk-model rendering here");

    std::string dual_out;
    int dual_samples = 1024;
    auto* dual = app.add_subcommand("dual", "emit the dual curve as a spec file");
    add_common(dual, c_dual);
    dual->add_option("--out", dual_out, "output spec path (default: stdout)");
    dual->add_option("--samples", dual_samples, "sample count for the emitted spec");

    std::string trace_kind = "mp", trace_out;
    auto* trace = app.add_subcommand("trace", "Mp or Vp step function as CSV");
    add_common(trace, c_trace);
    trace->add_option("--kind", trace_kind, "mp or vp")->check(CLI::IsMember({"mp", "vp"}));
    trace->add_option("--out", trace_out, "output CSV path (default: stdout)");

    int resolution = 100000;
    auto* oracle = app.add_subcommand("oracle", "brute-force counts (no refinement)");
    add_common(oracle, c_oracle);
    oracle->add_option("--resolution", resolution, "polyline resolution (>= 1e4)");

    auto* check = app.add_subcommand("check", "genericity check only");
    add_common(check, c_check);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            fbc::Config cfg = make_config(c_analyze);
            fbc::CurveModel K = fbc::load_spec_file(c_analyze.spec_path, cfg);
            fbc::Analysis a = fbc::analyze(K, cfg);
            json report = fbc::report_json(a);
            if (!json_out.empty()) write_file(json_out, report.dump(2) + "\n");
            if (!svg_out.empty()) write_file(svg_out, fbc::render_svg(K, a.events));
            std::cout << report.dump(2) << "\n";
            return exit_code_for(a);
        }
        if (dual->parsed()) {
            fbc::Config cfg = make_config(c_dual);
            fbc::CurveModel K = fbc::load_spec_file(c_dual.spec_path, cfg);
            fbc::CurveModel D = fbc::dual_curve(K, cfg);
            json spec = fbc::curve_to_spec(D, dual_samples);
            if (!dual_out.empty())
                write_file(dual_out, spec.dump(2) + "\n");
            else
                std::cout << spec.dump(2) << "\n";
            return 0;
        }
        if (trace->parsed()) {
            fbc::Config cfg = make_config(c_trace);
            fbc::CurveModel K = fbc::load_spec_file(c_trace.spec_path, cfg);
            std::vector<fbc::Event> events = fbc::find_all_events(K, cfg);
            std::string csv = fbc::trace_csv(K, events, trace_kind == "vp", cfg);
            if (!trace_out.empty())
                write_file(trace_out, csv);
            else
                std::cout << csv;
            return 0;
        }
        if (oracle->parsed()) {
            fbc::Config cfg = make_config(c_oracle);
            fbc::CurveModel K = fbc::load_spec_file(c_oracle.spec_path, cfg);
            fbc::OracleCounts oc = fbc::oracle_counts(K, resolution, cfg);
            json out{{"crossings", oc.crossings},     {"bitangents", oc.bitangents},
                     {"inflections", oc.inflections}, {"cusps", oc.cusps},
                     {"antipodal", oc.antipodal},     {"normal_tangent", oc.normal_tangent}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (check->parsed()) {
            fbc::Config cfg = make_config(c_check);
            fbc::CurveModel K = fbc::load_spec_file(c_check.spec_path, cfg);
            std::vector<fbc::Event> events;
            std::vector<fbc::Violation> violations;
            try {
                events = fbc::find_all_events(K, cfg);
            } catch (const fbc::Error& e) {
                violations.push_back({fbc::err_name(e.code()), 0, 0, e.what()});
            }
            for (const auto& v : fbc::check_genericity(K, events, cfg)) violations.push_back(v);
            json out = json::array();
            for (const auto& v : violations)
                out.push_back({{"code", v.code}, {"t1", v.t1}, {"t2", v.t2}, {"detail", v.detail}});
            std::cout << out.dump(2) << "\n";
            return violations.empty() ? 0 : 3;
        }
    } catch (const fbc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == fbc::Err::BadSpec || e.code() == fbc::Err::TooFewSamples ||
            e.code() == fbc::Err::GapTooLarge || e.code() == fbc::Err::NotClosed ||
            e.code() == fbc::Err::EmptyInput)
            return 1;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
