#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cgeo/errors.hpp"
#include "cgeo/scenario.hpp"
#include "doctest.h"

using namespace cgeo;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path d = fs::temp_directory_path() / ("cgeo_cli_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kAxisConfig = R"({
  "version": 1,
  "group": {"family": "free_abelian", "rank": 2},
  "pattern": {"kind": "digitized_line", "dx": 1, "dy": 0},
  "radii": [32, 64],
  "analyses": ["components", "separating"],
  "params": {"r": 0}
})";

const char* kDetectConfig = R"({
  "version": 1,
  "group": {"family": "free", "rank": 2},
  "pattern": {"kind": "thue_morse_line"},
  "radii": [8],
  "analyses": ["detect"],
  "params": {"k": 1}
})";

}  // namespace

TEST_CASE("component scenario writes reports and exits 0") {
    fs::path dir = fresh_dir("axis");
    ScenarioConfig c = parse_scenario(kAxisConfig);
    c.output_dir = dir.string();
    CHECK(run_scenario(c) == 0);

    std::string csv = slurp(dir / "components.csv");
    CHECK(csv.rfind("R,r,component_id,size,depth,label,touches_boundary\n", 0) == 0);
    // two Deep rows per radius
    int deep32 = 0, deep64 = 0;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        if (line.find(",Deep,") == std::string::npos) continue;
        if (line.rfind("32,", 0) == 0) ++deep32;
        if (line.rfind("64,", 0) == 0) ++deep64;
    }
    CHECK(deep32 == 2);
    CHECK(deep64 == 2);

    std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"n_separating\": 2") != std::string::npos);
    CHECK(report.find("\"stable\": true") != std::string::npos);
    CHECK(report.find("\"provenance\"") != std::string::npos);
}

TEST_CASE("failed detection exits 2 and names the status") {
    fs::path dir = fresh_dir("tm");
    ScenarioConfig c = parse_scenario(kDetectConfig);
    c.output_dir = dir.string();
    CHECK(run_scenario(c) == 2);
    CHECK(slurp(dir / "detection.json").find("DeepConditionViolated") != std::string::npos);
    CHECK(slurp(dir / "report.json").find("DeepConditionViolated") != std::string::npos);
}

TEST_CASE("malformed configs raise ConfigError naming the field") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"version":1,"group":{"family":"free","rank":2},
                           "pattern":{"kind":"thue_morse_line"},"radii":[],
                           "analyses":["growth"]})"),
        doctest::Contains("radii"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario("{"), doctest::Contains("config"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"version":2,"group":{"family":"free","rank":2},
                           "pattern":{"kind":"thue_morse_line"},"radii":[4],
                           "analyses":["growth"]})"),
        doctest::Contains("version"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"version":1,"group":{"family":"free","rank":2},
                           "pattern":{"kind":"thue_morse_line"},"radii":[4],
                           "analyses":["nope"]})"),
        doctest::Contains("analyses"), ConfigError);
}

TEST_CASE("reruns are byte-identical") {
    fs::path d1 = fresh_dir("rerun1"), d2 = fresh_dir("rerun2");
    ScenarioConfig c = parse_scenario(kAxisConfig);
    c.output_dir = d1.string();
    REQUIRE(run_scenario(c) == 0);
    c.output_dir = d2.string();
    REQUIRE(run_scenario(c) == 0);
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    CHECK(slurp(d1 / "components.csv") == slurp(d2 / "components.csv"));
    // and overwriting in place reproduces the same bytes
    std::string before = slurp(d1 / "report.json");
    c.output_dir = d1.string();
    REQUIRE(run_scenario(c) == 0);
    CHECK(slurp(d1 / "report.json") == before);
}

#ifdef CGEO_CLI_PATH
TEST_CASE("the cgeo binary wires flags to the runner") {
    fs::path dir = fresh_dir("bin");
    fs::path cfg = dir / "config.json";
    {
        std::ofstream out(cfg);
        out << kAxisConfig;
    }
    std::string cmd = std::string(CGEO_CLI_PATH) + " run " + cfg.string() + " --output-dir " +
                      (dir / "out").string() + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(dir / "out" / "report.json"));

    int rc2 = std::system((std::string(CGEO_CLI_PATH) + " run /nonexistent.json 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(rc2) == 1);

    FILE* pipe = popen((std::string(CGEO_CLI_PATH) + " list-families").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[256];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    pclose(pipe);
    CHECK(out.find("free_abelian") != std::string::npos);
    CHECK(out.find("detect") != std::string::npos);
}
#endif
