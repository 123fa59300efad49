#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "specshare/harness.hpp"

using namespace specshare;

namespace {

// Binary path is injected by the build; the tests shell out to it like a user.
std::string binary() {
    const char* bin = std::getenv("SPECSHARE_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SPECSHARE_BIN must point at the CLI binary");
    return bin;
}

std::string make_workdir() {
    char tmpl[] = "/tmp/specshare_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return tmpl;
}

int run_cli(const std::string& args) {
    const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    REQUIRE(out.good());
}

const char* kConfig = R"({
  "n_subcarriers": 4,
  "P_r": 40, "P_c": 40,
  "kappa": 1.0,
  "trials": 2,
  "tolerance": 0.01
})";

}  // namespace

TEST_CASE("run writes one record per trial and method") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/records.csv";
    CHECK(run_cli("run --config " + dir + "/cfg.json --out " + out) == 0);
    auto records = read_records_csv(out);
    CHECK(records.size() == 8);  // 2 trials x 4 default methods
}

TEST_CASE("run restricts to the requested methods and can archive json") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/records.csv";
    const std::string js = dir + "/records.json";
    CHECK(run_cli("run --config " + dir + "/cfg.json --methods joint,greedy --out " + out +
                  " --json " + js) == 0);
    auto records = read_records_csv(out);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        CHECK((r.method == Method::Joint || r.method == Method::Greedy));
    }
    std::ifstream in(js);
    REQUIRE(in.good());
    nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["records"].size() == 4);
    CHECK(doc["config"]["n_subcarriers"] == 4);
}

TEST_CASE("sweep tags records with the swept parameter") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/sweep.csv";
    CHECK(run_cli("sweep --config " + dir + "/cfg.json --param kappa --values 0.5,1.5 "
                  "--methods greedy --out " + out) == 0);
    auto records = read_records_csv(out);
    REQUIRE(records.size() == 4);  // 2 values x 2 trials x 1 method
    for (const auto& r : records) CHECK(r.sweep_param == "kappa");
}

TEST_CASE("contour covers the full budget grid") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/grid.csv";
    CHECK(run_cli("contour --config " + dir + "/cfg.json --pr 20,40 --pc 30 "
                  "--methods comm-absent --out " + out) == 0);
    auto records = read_records_csv(out);
    REQUIRE(records.size() == 4);  // 2 x 1 grid, 2 trials
    for (const auto& r : records) CHECK(r.sweep_param == "pr|pc");
}

TEST_CASE("profile writes the per-subcarrier table") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/profile.csv";
    CHECK(run_cli("profile --config " + dir + "/cfg.json --per-group 1 --out " + out) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,subcarrier,gamma_rr,gamma_cc,p_r,p_c,sinr_db,throughput");
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 16);  // 4 methods x 4 subcarriers
}

TEST_CASE("configuration problems exit with status 2") {
    const std::string dir = make_workdir();
    write_file(dir + "/broken.json", R"({"n_subcarriers": 4, "P_r": 40, "P_c": 40})");
    write_file(dir + "/cfg.json", kConfig);
    const std::string out = dir + "/x.csv";

    CHECK(run_cli("run --config " + dir + "/missing.json --out " + out) == 2);
    CHECK(run_cli("run --config " + dir + "/broken.json --out " + out) == 2);
    CHECK(run_cli("run --config " + dir + "/cfg.json --methods oracle --out " + out) == 2);
    CHECK(run_cli("sweep --config " + dir + "/cfg.json --param bandwidth --values 1 --out " +
                  out) == 2);
    CHECK(run_cli("sweep --config " + dir + "/cfg.json --param pr --out " + out) == 2);
    CHECK(run_cli("") == 2);  // a subcommand is required
}

TEST_CASE("an unreachable floor in profile mode exits with status 3") {
    const std::string dir = make_workdir();
    write_file(dir + "/cfg.json", R"({
      "n_subcarriers": 4, "P_r": 40, "P_c": 40, "kappa": 50.0, "trials": 1
    })");
    CHECK(run_cli("profile --config " + dir + "/cfg.json --per-group 1 --out " + dir +
                  "/p.csv") == 3);
}

TEST_CASE("help is available at exit status 0") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("run --help") == 0);
}
