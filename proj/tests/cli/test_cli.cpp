#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpmlab/cli.hpp"
#include "cpmlab/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace cpm;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "cpm_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json without_time(const std::string& text) {
    auto j = json::parse(text);
    j.erase("wall_time_ms");
    return j;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("cpm_lab_test_" + name);
    std::ofstream(p) << text;
    return p;
}

bool has_check(const json& report, const std::string& fragment) {
    for (const auto& c : report["checks"])
        if (c["name"].get<std::string>().find(fragment) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("weights") {
    auto r = run_cli({"weights", "--N", "4", "--k", "0"});
    CHECK(r.code == cli::exit_pass);
    auto j = json::parse(r.out);
    CHECK(j["schema_version"] == report_schema_version);
    CHECK(j["command"] == "weights");
    CHECK(has_check(j, "W reflection symmetry"));
    auto table = weight_table_from_json(j["data"]["tables"]["W"]);
    CHECK(table.n_states == 4);
    CHECK(std::abs(table.ratio(1) - table.ratio(3)) < 1e-13);

    CHECK(run_cli({"weights", "--N", "3"}).code == cli::exit_pass);
    CHECK(run_cli({"weights", "--k", "1.5"}).code == cli::exit_usage);
    CHECK(run_cli({"weights", "--N", "1"}).code == cli::exit_usage);

    auto csv = run_cli({"weights", "--N", "5", "--format", "csv"});
    CHECK(csv.code == cli::exit_pass);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 1 + 4 * 5);
}

TEST_CASE("ste reports are deterministic under a fixed seed") {
    auto a = run_cli({"ste", "finite", "--N", "3", "--count", "20", "--seed", "7"});
    auto b = run_cli({"ste", "finite", "--N", "3", "--count", "20", "--seed", "7"});
    CHECK(a.code == cli::exit_pass);
    CHECK(without_time(a.out) == without_time(b.out));
    CHECK(without_time(a.out).dump() == without_time(b.out).dump());
    auto c = run_cli({"ste", "finite", "--N", "3", "--count", "20", "--seed", "8"});
    CHECK(without_time(a.out) != without_time(c.out));

    // thread count does not change the report
    setenv("CPM_LAB_THREADS", "1", 1);
    auto one = run_cli({"ste", "dual", "--count", "6", "--seed", "3"});
    setenv("CPM_LAB_THREADS", "4", 1);
    auto four = run_cli({"ste", "dual", "--count", "6", "--seed", "3"});
    unsetenv("CPM_LAB_THREADS");
    CHECK(one.code == cli::exit_pass);
    CHECK(without_time(one.out).dump() == without_time(four.out).dump());
}

TEST_CASE("ste scopes") {
    CHECK(run_cli({"ste", "regime2", "--count", "5"}).code == cli::exit_pass);
    CHECK(run_cli({"ste", "regime3", "--count", "2"}).code == cli::exit_pass);
    CHECK(run_cli({"ste", "regime1", "--count", "2", "--cutoff", "20000"}).code == cli::exit_pass);
    CHECK(run_cli({"ste", "fourier", "--count", "1", "--cutoff", "20000"}).code == cli::exit_pass);
    // an unreachable tolerance fails the checks, not the parse
    auto tight = run_cli({"ste", "finite", "--count", "2", "--tol", "1e-30"});
    CHECK(tight.code == cli::exit_fail);
    CHECK(tight.err.find("FAIL") != std::string::npos);
    CHECK(run_cli({"ste", "sideways"}).code == cli::exit_usage);
    CHECK(run_cli({"ste"}).code == cli::exit_usage);
    CHECK(run_cli({"ste", "finite", "--k-max", "1.2"}).code == cli::exit_usage);
}

TEST_CASE("identity") {
    auto d = run_cli({"identity", "dougall"});
    CHECK(d.code == cli::exit_pass);
    auto j = json::parse(d.out);
    CHECK(j["checks"][0]["tolerance"] == 1e-9);
    CHECK(run_cli({"identity", "dougall", "--x", "0.1,0.2,0.3"}).code == cli::exit_usage);

    CHECK(run_cli({"identity", "rapidity", "--count", "50"}).code == cli::exit_pass);

    IdentityInstance good{{0.1, 0.15, 0.25}, {0.9, 0.85, 0.75}, {1, 0, -2}};
    auto ok = temp_file("good.json", json::array({to_json(good)}).dump());
    CHECK(run_cli({"identity", "file", "--input", ok.string()}).code == cli::exit_pass);

    // satisfies neither condition: both checks fail
    IdentityInstance bad{{0.1, 0.15, 0.25}, {0.9, 0.85, 0.95}, {0, 0, 0}};
    auto failing = temp_file("bad.json", to_json(bad).dump());
    CHECK(run_cli({"identity", "file", "--input", failing.string()}).code == cli::exit_fail);

    auto broken = temp_file("broken.json", "{\"x\": [0.1, 0.2");
    CHECK(run_cli({"identity", "file", "--input", broken.string()}).code == cli::exit_usage);
    auto short_x = temp_file("short.json", "{\"x\": [0.1, 0.2], \"y\": [1, 1, 1]}");
    CHECK(run_cli({"identity", "file", "--input", short_x.string()}).code == cli::exit_usage);
    CHECK(run_cli({"identity", "file", "--input", "/nonexistent/instances.json"}).code == cli::exit_usage);
    CHECK(run_cli({"identity", "file"}).code == cli::exit_usage);
}

TEST_CASE("limits") {
    auto r = run_cli({"limits"});
    CHECK(r.code == cli::exit_pass);
    CHECK(has_check(json::parse(r.out), "correction ratio"));

    auto one = run_cli({"limits", "--sizes", "64", "--alphas", "0.3", "--fractions", "0.25", "--orders", "2",
                        "--format", "csv"});
    CHECK(one.code == cli::exit_pass);
    CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);

    CHECK(run_cli({"limits", "--sizes", ""}).code == cli::exit_usage);
    CHECK(run_cli({"limits", "--fractions", "0.75"}).code == cli::exit_usage);
    CHECK(run_cli({"limits", "--orders", "two"}).code == cli::exit_usage);
}

TEST_CASE("global flags and output") {
    auto path = std::filesystem::temp_directory_path() / "cpm_lab_test_out.json";
    auto r = run_cli({"--out", path.string(), "weights"});
    CHECK(r.code == cli::exit_pass);
    CHECK(r.out.empty());
    std::ifstream f(path);
    CHECK(json::parse(f)["command"] == "weights");
    // global flags after the subcommand
    CHECK(run_cli({"ste", "finite", "--count", "1", "--seed", "5"}).code == cli::exit_pass);
    CHECK(run_cli({"weights", "--format", "xml"}).code == cli::exit_usage);
    CHECK(run_cli({"frobnicate"}).code == cli::exit_usage);
    CHECK(run_cli({}).code == cli::exit_usage);
    CHECK(run_cli({"--help"}).code == cli::exit_pass);
}

TEST_CASE("serialized types round-trip") {
    IdentityInstance inst{{cplx(0.1, 0.2), 0.3, 0.4}, {1.0, cplx(0.5, -0.1), 0.9}, {1, -2, 3}};
    auto back = identity_instance_from_json(json::parse(to_json(inst).dump()));
    CHECK(back.x == inst.x);
    CHECK(back.y == inst.y);
    CHECK(back.m == inst.m);
    CHECK_THROWS_AS(identity_instance_from_json(json::parse("{\"x\": [1, 2, 3], \"y\": [1, 2, 3], \"m\": [0.5, 0, 0]}")),
                    std::invalid_argument);
    WeightTable t{3, {1.0, cplx(0.2, 0.1), 0.7}, cplx(2.0, -1.0)};
    auto tb = weight_table_from_json(to_json(t));
    CHECK(tb.ratios == t.ratios);
    CHECK(tb.normalization == t.normalization);
    CHECK_THROWS_AS(weight_table_from_json(json::parse("{\"N\": 3, \"re\": [1], \"im\": [0]}")), std::invalid_argument);

    auto c = make_check("nan", std::nan(""), 1.0, 1.0);
    CHECK_FALSE(c.pass);
    auto s = scalar_check("ratio", 0.5, 1.0);
    CHECK(s.pass);
    CHECK(s.rel_err == 0.5);
}
