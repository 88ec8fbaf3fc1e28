#include "doctest.h"
#include "toric/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace toric;
using namespace toric::cli;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string example(const std::string& name) { return std::string(TORIC_EXAMPLES_DIR) + "/" + name; }

std::string pointer_of(const std::string& text) {
    try {
        parse_problem_text(text);
    } catch (const SchemaError& e) {
        return e.pointer();
    }
    return "<accepted>";
}

RunResult run_example(const std::string& name, RunOptions opts = {}) {
    auto bytes = read_file(example(name));
    auto problem = parse_problem_text(bytes);
    return run_task(*problem.task, problem, opts, bytes);
}

int shell(const std::string& args) {
    std::string cmd = std::string(TORIC_BINARY) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string tmp_path(const std::string& name) { return std::string(TORIC_TMP_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("schema errors carry JSON pointers") {
    CHECK(pointer_of(R"({"supports": [[[0]]]})") == "/ambient_rank");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0]]], "extra": 1})") == "/extra");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0], [1.5]]]})") == "/supports/0/1/0");
    CHECK(pointer_of(R"({"ambient_rank": 2, "supports": [[[0, 0], [1]]]})") == "/supports/0/1");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0], [0]]]})") == "/supports/0/1");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[]]})") == "/supports/0");
    CHECK(pointer_of(R"({"ambient_rank": 1, "characteristics": [4], "supports": [[[0]]]})") == "/characteristics/0");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0], [1]]],
                         "eci": [{"support_index": 0, "rows": [[1]]}]})") == "/eci/0/rows/0");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0], [1]]],
                         "eci": [{"support_index": 0, "rows": [[1, "1/0"]]}]})") == "/eci/0/rows/0/1");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0], [1]]],
                         "eci": [{"support_index": 0, "rows": [[1, 0.5]]}]})") == "/eci/0/rows/0/1");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0]]], "eci": [{"support_index": 1, "rows": [[1]]}]})") ==
          "/eci/0/support_index");
    CHECK(pointer_of(R"({"ambient_rank": 2, "supports": [[[0, 0]]], "pattern": {"kind": "gradient", "x": 0, "y": 0}})") ==
          "/pattern/y");
    CHECK(pointer_of(R"({"ambient_rank": 2, "supports": [[[0, 0]]], "pattern": {"kind": "tower", "variable": 2, "order": 1}})") ==
          "/pattern/variable");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0]]], "task": "factor"})") == "/task");
    CHECK(pointer_of("{not json") == "");
    CHECK(pointer_of(R"({"ambient_rank": 1, "supports": [[[0]]]})") == "<accepted>");
}

TEST_CASE("scalars parse per characteristic") {
    auto p = parse_problem_text(R"({"ambient_rank": 1, "characteristics": [0, 3], "supports": [[[0], [1]]],
                                    "eci": [{"support_index": 0, "rows": [[1, "1/3"]]}]})");
    CHECK(build_matrices("eci-check", p, Characteristic())[0](0, 1) == Scalar(Characteristic(), Rational(1, 3)));
    try {
        build_matrices("eci-check", p, Characteristic(3));
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.pointer() == "/eci/0/rows/0/1");
    }
}

TEST_CASE("components on {0,2} reports N = 2") {
    auto r = run_example("components_two_points.json");
    CHECK(r.exit_code == exit_definitive);
    CHECK(r.report["result"]["verdict"] == "components");
    CHECK(r.report["result"]["N"] == "2");
    CHECK(r.report["result"]["J0"] == Json::array({1}));
}

TEST_CASE("khovanskii on parallel segments fails with witness {1,2}") {
    auto r = run_example("khovanskii_parallel_segments.json");
    CHECK(r.report["result"]["satisfied"] == false);
    CHECK(r.report["result"]["witness"] == Json::array({1, 2}));
    CHECK(r.report["result"]["defects"].size() == 3);
}

TEST_CASE("mvol of 2 and 3 times the simplex") {
    auto r = run_example("mvol_scaled_simplices.json");
    CHECK(r.report["result"]["mixed_volume"] == "6");
    auto p = parse_problem_text(R"({"ambient_rank": 2, "supports": [[[0, 0], [1, 0]]]})");
    CHECK_THROWS_AS(run_task("mvol", p, {}, ""), SchemaError);
}

TEST_CASE("two-triangle eci-check certifies and re-verifies") {
    auto bytes = read_file(example("eci_two_triangles.json"));
    auto problem = parse_problem_text(bytes);
    auto r = run_task("eci-check", problem, {}, bytes);
    CHECK(r.exit_code == exit_definitive);
    CHECK(r.report["result"]["verdict"] == "irreducible");
    for (const auto& e : r.report["result"]["characteristics"]) CHECK(e.contains("certificate"));
    auto v = verify_report(problem, r.report);
    CHECK(v.exit_code == exit_definitive);
    CHECK(v.report["valid"] == true);

    Json tampered = r.report;
    tampered["result"]["characteristics"][0]["certificate"]["collections"][0]["deltas"][0] = Json::array({0, 1});
    auto bad = verify_report(problem, tampered);
    CHECK(bad.exit_code == exit_error);
    CHECK(bad.report["valid"] == false);

    tampered = r.report;
    tampered["result"]["characteristics"][1]["certificate"]["collections"][0]["transform"][0][0] = "0";
    CHECK(verify_report(problem, tampered).report["valid"] == false);
}

TEST_CASE("critical-locus fixtures certify and re-verify") {
    for (const char* name : {"critical_gradient.json", "critical_tower.json"}) {
        CAPTURE(name);
        auto bytes = read_file(example(name));
        auto problem = parse_problem_text(bytes);
        auto r = run_task("critical-locus", problem, {}, bytes);
        CHECK(r.report["result"]["verdict"] == "irreducible");
        CHECK(verify_report(problem, r.report).report["valid"] == true);
    }
}

TEST_CASE("budget exhaustion is inconclusive") {
    RunOptions opts;
    opts.max_states = 3;
    auto r = run_example("critical_tower.json", opts);
    CHECK(r.exit_code == exit_inconclusive);
    CHECK(r.report["result"]["verdict"] == "inconclusive");
    auto bytes = read_file(example("critical_tower.json"));
    CHECK(verify_report(parse_problem_text(bytes), r.report).report["valid"] == true);
}

TEST_CASE("components report re-verifies and detects a wrong N") {
    auto bytes = read_file(example("components_two_points.json"));
    auto problem = parse_problem_text(bytes);
    auto r = run_task("components", problem, {}, bytes);
    CHECK(verify_report(problem, r.report).exit_code == exit_definitive);
    r.report["result"]["N"] = "3";
    CHECK(verify_report(problem, r.report).exit_code == exit_error);
}

TEST_CASE("reports are byte-stable for fixed input and seed") {
    for (const char* name : {"eci_two_triangles.json", "critical_tower.json", "oracle_segment.json",
                             "khovanskii_parallel_segments.json"}) {
        CAPTURE(name);
        RunOptions opts;
        opts.seed = 7;
        opts.oracle_trials = 20;
        CHECK(run_example(name, opts).report.dump() == run_example(name, opts).report.dump());
    }
}

TEST_CASE("oracle on a 1-D support agrees with the volume") {
    RunOptions opts;
    opts.oracle_trials = 50;
    auto r = run_example("oracle_segment.json", opts);
    CHECK(r.report["result"]["expected"] == "5");
    CHECK(r.report["result"]["defects_agree"] == true);
    for (const auto& run : r.report["result"]["runs"]) CHECK(run["matches"].get<int>() >= 45);
}

TEST_CASE("input hash is FNV-1a") {
    CHECK(input_hash("") == "cbf29ce484222325");
    CHECK(input_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("binary exit codes") {
    CHECK(shell("components " + example("components_two_points.json")) == 0);
    CHECK(shell("run " + example("eci_two_triangles.json") + " --text") == 0);
    CHECK(shell("run - < " + example("khovanskii_parallel_segments.json")) == 0);
    CHECK(shell("critical-locus " + example("critical_tower.json") + " --max-states 3") == 2);
    CHECK(shell("critical-locus " + example("critical_tower.json") + " --char 2") == 1);
    CHECK(shell("eci-check " + example("critical_tower.json")) == 1);
    CHECK(shell("components /nonexistent.json") == 1);
    CHECK(shell("nosuch") == 1);
    CHECK(shell("--help") == 0);
    CHECK(shell("eci-check " + example("eci_two_triangles.json") + " --char 0 --char 7") == 0);
    CHECK(shell("eci-check " + example("eci_two_triangles.json") + " --char 4") == 1);
}

TEST_CASE("binary round-trips --verify-certificate") {
    auto report = tmp_path("cli_roundtrip_report.json");
    for (const char* name : {"eci_two_triangles.json", "critical_gradient.json", "components_two_points.json"}) {
        CAPTURE(name);
        REQUIRE(shell("run " + example(name) + " -o " + report) == 0);
        CHECK(shell("run " + example(name) + " --verify-certificate " + report) == 0);
    }
    std::remove(report.c_str());
}

}  // TEST_SUITE
