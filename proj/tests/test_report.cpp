#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "claqs/report.hpp"

using namespace claqs;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) {
            if (header) *header = line;
            first = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell.empty() ? std::nan("") : std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("format_g12 renders 12 significant digits", "[report]") {
    CHECK(format_g12(0.5) == "0.5");
    CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
    CHECK(format_g12(1e-12) == "1e-12");
}

TEST_CASE("output records serialize to JSON with the right fields", "[report]") {
    OutputRecord rec;
    rec.state = FockState{3};
    rec.measure = "classicality";
    rec.result = classicality_fock(3);
    const nlohmann::json j = to_json(rec);
    CHECK(j["state"]["family"] == "fock");
    CHECK(j["state"]["n"] == 3);
    CHECK(j["measure"] == "classicality");
    CHECK(j["method"] == "closed_form");
    CHECK(j.contains("argmax_eta"));
    CHECK_FALSE(j.contains("dim"));
    CHECK_FALSE(j.contains("tail_bound"));

    OutputRecord num;
    num.state = ThermalState{0.4};
    num.measure = "classicality";
    num.result = classicality_numeric(build_state(ThermalState{0.4}, 64));
    num.dim = 64;
    num.tail_bound = 1e-12;
    const nlohmann::json jn = to_json(num);
    CHECK(jn["method"] == "numeric_grid");
    CHECK(jn["dim"] == 64);
    CHECK(jn.contains("tail_bound"));
    CHECK(jn["state"].contains("nbar"));
}

TEST_CASE("csv records carry one value per column", "[report]") {
    OutputRecord rec;
    rec.state = SqueezedVacuumState{2.0};
    rec.measure = "anticlassicality_A1";
    rec.result = anticlassicality(StateSpec{SqueezedVacuumState{2.0}}, false, false);
    const std::string row = record_csv_row(rec);
    CHECK(row.find("anticlassicality_A1,sqv,0.19245008973") == 0);
    const std::string header = record_csv_header();
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
}

TEST_CASE("fig1 surface data", "[report]") {
    std::ostringstream os;
    write_fig1_csv(os);
    std::string header;
    const auto rows = parse_csv(os.str(), &header);
    CHECK(header == "eta,alpha_sq,f3");
    REQUIRE(rows.size() == 100 * 100);
    double max_f = 0.0, max_eta = -1.0, max_r = -1.0;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 3);
        if (row[2] > max_f) {
            max_f = row[2];
            max_eta = row[0];
            max_r = row[1];
        }
    }
    // grid maximum sits next to (eta_3, 0) = (0.8660, 0)
    CHECK_THAT(max_f, WithinAbs(0.32475952641916449, 1e-4));
    CHECK_THAT(max_eta, WithinAbs(0.866, 0.011));
    CHECK(max_r == 0.0);
}

TEST_CASE("fig2 curve peaks at nbar = 1 with value 1/e", "[report]") {
    std::ostringstream os;
    write_fig2_csv(os);
    const auto rows = parse_csv(os.str());
    REQUIRE(rows.size() == 161);
    double max_v = 0.0, max_nb = -1.0;
    for (const auto& row : rows)
        if (row[1] > max_v) {
            max_v = row[1];
            max_nb = row[0];
        }
    CHECK(max_nb == 1.0);
    CHECK_THAT(max_v, WithinAbs(1.0 / std::numbers::e, 1e-11));  // 12 significant digits in the CSV
}

TEST_CASE("fig3 columns and sqv peak", "[report]") {
    std::ostringstream os;
    write_fig3_csv(os);
    std::string header;
    const auto rows = parse_csv(os.str(), &header);
    CHECK(header == "nbar,A1_sqv,A1_phase,Atilde1_thermal");
    REQUIRE(rows.size() == 201);
    double max_sqv = 0.0, at = -1.0;
    for (const auto& row : rows)
        if (row[1] > max_sqv) {
            max_sqv = row[1];
            at = row[0];
        }
    CHECK(at == 2.0);
    CHECK_THAT(max_sqv, WithinAbs(0.19245008972987526, 1e-11));
}

TEST_CASE("figure output is byte-stable across runs", "[report]") {
    std::ostringstream a, b;
    write_fig3_csv(a);
    write_fig3_csv(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find('\r') == std::string::npos);  // LF only
}

TEST_CASE("golden report passes every frozen value", "[report]") {
    const auto rows = golden_report();
    CHECK(rows.size() > 40);
    for (const auto& r : rows) {
        INFO(r.name << ": reference=" << r.reference << " computed=" << r.computed << " diff=" << r.abs_diff);
        CHECK(r.pass);
        CHECK(r.abs_diff <= 1e-10);
    }
    const nlohmann::json j = to_json(rows);
    CHECK(j.is_array());
    CHECK(j.size() == rows.size());
}
