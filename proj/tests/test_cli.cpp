// End-to-end checks of the installed command-line binary.
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLAQS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("classicality fock 1 --method both agrees across paths", "[cli]") {
    const RunResult r = run_cli("classicality fock 1 --method both");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["records"].size() == 2);
    CHECK(j["records"][0]["method"] == "closed_form");
    CHECK(j["records"][0]["value"] == 0.5);
    CHECK(j["records"][1]["method"] == "numeric_grid");
    CHECK(j["records"][1].contains("dim"));
    CHECK(j["records"][1].contains("tail_bound"));
    CHECK(j["abs_diff"].get<double>() < 1e-6);
}

TEST_CASE("classicality of a coherent state is 1 numerically", "[cli]") {
    const RunResult r = run_cli("classicality coherent 1.5 --method numeric");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("gaussian classicality closed value", "[cli]") {
    const RunResult r = run_cli("classicality gaussian --sq 0.25 --sp 1.0 --spq 0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 0.94280904158206337) < 1e-12);
}

TEST_CASE("anticlassicality subcommand variants", "[cli]") {
    const RunResult sqv = run_cli("anticlassicality sqv --nbar 2 --variant A1");
    REQUIRE(sqv.exit_code == 0);
    auto j = nlohmann::json::parse(sqv.out);
    CHECK(std::abs(j["value"].get<double>() - 0.19245008972987526) < 1e-12);
    CHECK(j["argmax_n"] == 2);

    const RunResult ph = run_cli("anticlassicality phase --nbar 1 --variant A1");
    j = nlohmann::json::parse(ph.out);
    CHECK(j["value"] == 0.25);
    CHECK(j["argmax_n"] == 1);

    const RunResult fock = run_cli("anticlassicality fock 4 --variant A");
    j = nlohmann::json::parse(fock.out);
    CHECK(j["value"] == 1.0);
    CHECK(j["argmax_n"] == 4);

    const RunResult th = run_cli("anticlassicality thermal --nbar 1 --variant Atilde");
    j = nlohmann::json::parse(th.out);
    CHECK(std::abs(j["value"].get<double>() - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("csv format emits a header and one row per record", "[cli]") {
    const RunResult r = run_cli("classicality thermal --eta 0.4 --method both --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("measure,family,value") == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("figure subcommand writes deterministic CSV", "[cli]") {
    const RunResult a = run_cli("figure fig2");
    const RunResult b = run_cli("figure fig2");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("nbar,A1_coherent\n") == 0);
    const RunResult f3 = run_cli("figure fig3 --samples 11");
    CHECK(std::count(f3.out.begin(), f3.out.end(), '\n') == 12);
}

TEST_CASE("json records round-trip: re-running the parsed state reproduces the record", "[cli]") {
    const RunResult first = run_cli("classicality sqv --nbar 1.5 --method numeric");
    REQUIRE(first.exit_code == 0);
    const auto j = nlohmann::json::parse(first.out);
    REQUIRE(j["state"]["family"] == "sqv");
    const double nbar = j["state"]["nbar"].get<double>();
    char args[160];
    std::snprintf(args, sizeof args, "classicality sqv --nbar %.17g --method numeric", nbar);
    const RunResult second = run_cli(args);
    CHECK(first.out == second.out);
}

TEST_CASE("search flags are honored and --out writes the file", "[cli]") {
    const RunResult r = run_cli("classicality fock 1 --method numeric --grid 32 --tol 1e-6 --dim 48");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["dim"] == 48);
    CHECK(std::abs(j["value"].get<double>() - 0.5) < 1e-5);

    const std::string path = "/tmp/claqs_cli_out_test.json";
    std::remove(path.c_str());
    const RunResult w = run_cli("classicality fock 2 --out " + path);
    REQUIRE(w.exit_code == 0);
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    char buf[4096];
    const std::size_t n = std::fread(buf, 1, sizeof buf, fp);
    std::fclose(fp);
    const auto jf = nlohmann::json::parse(std::string(buf, n));
    CHECK(std::abs(jf["value"].get<double>() - 0.38490017945975051) < 1e-12);
    std::remove(path.c_str());
}

TEST_CASE("validation failures exit 1", "[cli]") {
    CHECK(run_cli("classicality thermal --eta 1.5").exit_code == 1);
    CHECK(run_cli("classicality thermal").exit_code == 1);
    CHECK(run_cli("classicality phase --eps 1.2").exit_code == 1);
    CHECK(run_cli("classicality gaussian --sq 0.1 --sp 0.1").exit_code == 1);
    CHECK(run_cli("anticlassicality fock 3 --variant bogus").exit_code == 1);
    CHECK(run_cli("figure fig9").exit_code == 1);
    CHECK(run_cli("bogus-subcommand").exit_code == 1);
}

TEST_CASE("unreachable truncation tolerance exits 2", "[cli]") {
    // dim forced too small for the requested state
    CHECK(run_cli("classicality thermal --eta 0.9 --method numeric --dim 8").exit_code == 2);
}

TEST_CASE("golden-report exits 0 and emits the table", "[cli]") {
    const RunResult r = run_cli("golden-report");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.is_array());
    CHECK(j.size() > 40);
    for (const auto& row : j) CHECK(row["pass"] == true);
}
