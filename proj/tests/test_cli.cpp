#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

#ifndef FBCOUNT_BIN
#define FBCOUNT_BIN "./fbcount"
#endif
#ifndef FBCOUNT_FIXTURES
#define FBCOUNT_FIXTURES "fixtures"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_path = std::string(std::tmpnam(nullptr)) + ".out";
    std::string cmd =
        std::string(FBCOUNT_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(out_path.c_str());
    return r;
}

std::string fixture(const char* name) {
    return std::string(FBCOUNT_FIXTURES) + "/" + name;
}

} // namespace

TEST_CASE("analyze: a trivial curve exits 0 with an all-zero report") {
    RunResult r = run("analyze " + fixture("circle.json"));
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["generic"] == true);
    for (const char* k : {"C1", "C2", "T1", "T2", "I", "U", "A1", "A2", "N1", "N2"})
        CHECK(j["counts"][k] == 0);
}

TEST_CASE("analyze: the worked example exits 0 with the recorded counts") {
    RunResult r = run("analyze " + fixture("fig7_left.json"));
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["counts"]["N1"] == 4);
    CHECK(j["counts"]["C2"] == 1);
    CHECK(j["counts"]["T1"] == 1);
    CHECK(j["residuals"]["theorem1"] == "0");
}

TEST_CASE("analyze: a non-generic curve exits 3 and reports the violation") {
    RunResult r = run("analyze " + fixture("right_angle.json"));
    CHECK(r.exit_code == 3);
    json j = json::parse(r.out);
    CHECK(j["generic"] == false);
    bool perp = false;
    for (const auto& v : j["violations"])
        if (v["code"] == "perpendicular_tangents") perp = true;
    CHECK(perp);
}

TEST_CASE("analyze: artifact flags write JSON and SVG files") {
    std::string base = std::tmpnam(nullptr);
    std::string jpath = base + ".json", spath = base + ".svg";
    RunResult r = run("analyze " + fixture("circle.json") + " --json " + jpath +
                      " --svg " + spath);
    CHECK(r.exit_code == 0);
    std::ifstream jf(jpath), sf(spath);
    REQUIRE(jf.good());
    REQUIRE(sf.good());
    json j;
    jf >> j;
    CHECK(j["generic"] == true);
    std::stringstream ss;
    ss << sf.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    std::remove(jpath.c_str());
    std::remove(spath.c_str());
}

TEST_CASE("malformed input exits 1") {
    CHECK(run("analyze /nonexistent/spec.json").exit_code == 1);
    std::string bad = std::string(std::tmpnam(nullptr)) + ".json";
    std::ofstream(bad) << "{ not json";
    CHECK(run("analyze " + bad).exit_code == 1);
    std::ofstream(bad) << "{\"kind\": \"planar\"}";
    CHECK(run("analyze " + bad).exit_code == 1);
    std::remove(bad.c_str());
}

TEST_CASE("dual: emits a loadable spherical spec") {
    RunResult r = run("dual " + fixture("fig7_right.json"));
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["kind"] == "spherical");
    CHECK(j["samples"].is_array());
    CHECK(j["samples"].size() >= 1024);
}

TEST_CASE("trace: both step functions come back as CSV") {
    RunResult mp = run("trace " + fixture("fig7_right.json") + " --kind mp");
    CHECK(mp.exit_code == 0);
    CHECK(mp.out.rfind("t,Mp_plus,Mp_minus,Mp\n", 0) == 0);
    RunResult vp = run("trace " + fixture("fig7_right.json") + " --kind vp");
    CHECK(vp.exit_code == 0);
    CHECK(vp.out.rfind("t,Wp,Bp,Vp\n", 0) == 0);
}

TEST_CASE("oracle: brute-force counts for a trivial curve are all zero") {
    RunResult r = run("oracle " + fixture("circle.json"));
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    for (const char* k :
         {"crossings", "bitangents", "inflections", "cusps", "antipodal", "normal_tangent"})
        CHECK(j[k] == 0);
}

TEST_CASE("check: genericity-only mode uses exit codes 0 and 3") {
    CHECK(run("check " + fixture("circle.json")).exit_code == 0);
    RunResult r = run("check " + fixture("right_angle.json"));
    CHECK(r.exit_code == 3);
    CHECK(json::parse(r.out).is_array());
}

TEST_CASE("config file overrides are accepted") {
    std::string cpath = std::string(std::tmpnam(nullptr)) + ".json";
    std::ofstream(cpath) << R"({"config": {"grid1d": 2048}})";
    CHECK(run("analyze " + fixture("circle.json") + " --config " + cpath).exit_code == 0);
    std::ofstream(cpath) << R"({"config": {"grid1d": "lots"}})";
    CHECK(run("analyze " + fixture("circle.json") + " --config " + cpath).exit_code == 1);
    std::remove(cpath.c_str());
}
