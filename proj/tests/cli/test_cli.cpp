// End-to-end tests of the holonomy-lab binary: exit codes, verdict lines,
// report determinism and schema diagnostics.  argv[1] is the binary path,
// argv[2] the scenario directory (both injected by CTest).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

std::string g_bin;
std::string g_dir;

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cmd(const std::string& args, const char* redirect = "2>&1") {
    std::string cmd = g_bin + " " + args + " " + redirect;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scen(const char* name) { return g_dir + "/" + name; }

nlohmann::json parse_json(const std::string& text) {
    return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("holonomy endpoint of the unit square matches the quoted value") {
    CmdResult r = run_cmd("holonomy --scenario " + scen("exA.json") +
                              " --loop unit_square --steps 10000",
                          "2>/dev/null");
    CHECK(r.exit_code == 0);
    nlohmann::json doc = parse_json(r.output);
    REQUIRE(doc.contains("endpoint"));
    double end = doc["endpoint"][0].get<double>();
    CHECK(std::abs(end - 1.0) < 1e-9);
    CHECK(doc["closed"].get<bool>());
}

TEST_CASE("reports are byte-identical across reruns") {
    std::string args = "holonomy --scenario " + scen("exA.json") + " --loop stitched";
    CmdResult a = run_cmd(args, "2>/dev/null");
    CmdResult b = run_cmd(args, "2>/dev/null");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.size() > 0);
    CHECK(a.output.back() == '\n');
}

TEST_CASE("alias --path selects the same loop as --loop") {
    CmdResult a = run_cmd("holonomy --scenario " + scen("exA.json") + " --loop backwards",
                          "2>/dev/null");
    CmdResult b = run_cmd("holonomy --scenario " + scen("exA.json") + " --path backwards",
                          "2>/dev/null");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("group-connection gate fails on the area-rule connection") {
    CmdResult r = run_cmd("check-group --scenario " + scen("exA.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("GROUP_CONNECTION: FAIL") != std::string::npos);
}

TEST_CASE("group-connection gate passes on a multiplicative-coefficient connection") {
    CmdResult r = run_cmd("check-group --scenario " + scen("linear.json"), "2>/dev/null");
    CHECK(run_cmd("check-group --scenario " + scen("linear.json")).exit_code == 0);
    nlohmann::json doc = parse_json(r.output);
    CHECK(doc["verdict"] == "PASS");
    CHECK(doc["max_residual"].get<double>() < 1e-6);
    CHECK(doc["samples"].get<int>() == 200);
}

TEST_CASE("family bundle with a trivial connection fails the gate") {
    CmdResult r = run_cmd("check-group --scenario " + scen("family.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("GROUP_CONNECTION: FAIL") != std::string::npos);
}

TEST_CASE("missing scenario file exits with the usage code") {
    CmdResult r = run_cmd("holonomy --scenario /nonexistent/nope.json");
    CHECK(r.exit_code == 1);
}

TEST_CASE("schema errors carry the offending field path and exit 1") {
    std::string bad = "/tmp/holab_bad_scenario.json";
    {
        std::ofstream out(bad);
        out << R"({"base": {"type": "box", "intervals": [[1.0, -1.0]]},)"
            << R"( "connection": {"type": "trivial"}, "paths": {}})" << "\n";
    }
    CmdResult r = run_cmd("holonomy --scenario " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("base.intervals[0]") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("a path leaving the base chart exits with the numeric-failure code") {
    CmdResult r = run_cmd("lift --scenario " + scen("exA.json") + " --loop runaway");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("unknown subcommands and empty invocations exit 1") {
    CHECK(run_cmd("frobnicate --scenario x.json").exit_code == 1);
    CHECK(run_cmd("").exit_code == 1);
    CHECK(run_cmd("holonomy").exit_code == 1);  // missing required --scenario
}

TEST_CASE("csv reports expose the residual table") {
    CmdResult r = run_cmd("check-group --scenario " + scen("linear.json") + " --format csv",
                          "2>/dev/null");
    CHECK(r.output.find("index,kind,residual") != std::string::npos);
    CHECK(r.output.find("mul") != std::string::npos);
}

TEST_CASE("--output writes the report to a file and keeps stdout clean") {
    std::string out_file = "/tmp/holab_report.json";
    std::remove(out_file.c_str());
    CmdResult r = run_cmd("holonomy --scenario " + scen("exA.json") + " --loop unit_square" +
                              " --output " + out_file,
                          "2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(out_file);
    REQUIRE(in.good());
    nlohmann::json doc;
    in >> doc;
    CHECK(std::abs(doc["endpoint"][0].get<double>() - 1.0) < 1e-9);
    std::remove(out_file.c_str());
}

TEST_CASE("shrinking-loop derivative matches twice the curvature from the command line") {
    CmdResult r = run_cmd("as-slope --scenario " + scen("exA.json") +
                              " --x 0.5 0.5 --steps 4000",
                          "2>/dev/null");
    CHECK(run_cmd("as-slope --scenario " + scen("exA.json") + " --x 0.5 0.5 --steps 4000")
              .output.find("AS_SLOPE: PASS") != std::string::npos);
    nlohmann::json doc = parse_json(r.output);
    CHECK(std::abs(doc["estimate"][0].get<double>() - 1.0) < 1e-4);
}

TEST_CASE("curvature sampling reports the seeded max") {
    CmdResult r = run_cmd("curvature --scenario " + scen("exA.json") + " --samples 5",
                          "2>/dev/null");
    CHECK(r.exit_code == 0);
    nlohmann::json doc = parse_json(r.output);
    CHECK(std::abs(doc["max_sup"].get<double>() - 0.5) < 1e-8);
}

TEST_CASE("cocycle calculus subcommands pass on the shipped scenarios") {
    CHECK(run_cmd("cocycle --scenario " + scen("aff1_cocycle.json"))
              .output.find("COCYCLE: PASS") != std::string::npos);
    CHECK(run_cmd("add-cocycle --scenario " + scen("aff1_cocycle.json")).exit_code == 0);
    CHECK(run_cmd("difference --scenario " + scen("linear.json"))
              .output.find("DIFFERENCE: PASS") != std::string::npos);
}

TEST_CASE("trivialization round trip passes over the scenario cube") {
    CmdResult r = run_cmd("trivialize --scenario " + scen("gradient.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("TRIVIALIZE: PASS") != std::string::npos);
}

TEST_CASE("gauge comparisons pass for the affine frame field") {
    CHECK(run_cmd("gauge --scenario " + scen("gauge_aff1.json"))
              .output.find("GAUGE: PASS") != std::string::npos);
    CHECK(run_cmd("compare-hol --scenario " + scen("gauge_aff1.json") + " --loop round")
              .output.find("COMPARE_HOL: PASS") != std::string::npos);
}

TEST_CASE("annulus monodromy subcommands report PASS verdicts") {
    CmdResult mono = run_cmd("monodromy --scenario " + scen("rep_scaling.json"));
    CHECK(mono.exit_code == 0);
    CHECK(mono.output.find("MONODROMY: PASS") != std::string::npos);

    CmdResult rt = run_cmd("roundtrip --scenario " + scen("aff1_rep.json"));
    CHECK(rt.exit_code == 0);
    CHECK(rt.output.find("ROUNDTRIP: PASS") != std::string::npos);

    CmdResult ca = run_cmd("compare-aut --scenario " + scen("rep_scaling.json"));
    CHECK(ca.exit_code == 0);
    CHECK(ca.output.find("COMPARE_AUT: PASS") != std::string::npos);
}

TEST_CASE("monodromy on a box-base scenario is a schema error") {
    CmdResult r = run_cmd("monodromy --scenario " + scen("linear.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("schema error") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <holonomy-lab binary> <scenario dir>\n");
        return 1;
    }
    g_bin = argv[1];
    g_dir = argv[2];
    doctest::Context ctx;
    return ctx.run();
}
