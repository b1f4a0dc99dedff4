#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "claqs/optimize.hpp"

using namespace claqs;
using Catch::Matchers::WithinAbs;

TEST_CASE("maximize_1d quadratic", "[optimize]") {
    const auto peak = maximize_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, {0.0, 1.0});
    CHECK_THAT(peak.x, WithinAbs(0.3, 1e-8));
    CHECK_THAT(peak.value, WithinAbs(0.0, 1e-15));
}

TEST_CASE("maximize_1d boundary maximum", "[optimize]") {
    const auto peak = maximize_1d([](double x) { return -x; }, {0.0, 1.0});
    CHECK_THAT(peak.x, WithinAbs(0.0, 1e-7));
    CHECK(peak.value <= 0.0);
}

TEST_CASE("maximize_1d thermal-overlap profile has its peak where the purities match", "[optimize]") {
    // F(eta) = 2 sqrt(mu(1-eta^2)/(a - 2b eta + c eta^2)) with mu = 0.5, T = 2
    const double mu = 0.5, T = 2.0;
    const double mu2 = mu * mu;
    const double a = 1 + mu2 + 2 * T * mu2, b = 1 - mu2, c = 1 + mu2 - 2 * T * mu2;
    auto F = [&](double eta) { return 2.0 * std::sqrt(mu * (1 - eta * eta) / (a - 2 * b * eta + c * eta * eta)); };
    const auto peak = maximize_1d(F, {0.0, 0.999});
    CHECK_THAT(peak.x, WithinAbs((1.0 - mu) / (1.0 + mu), 1e-8));
    CHECK_THAT(peak.value, WithinAbs(std::sqrt(2.0 / (1.0 + mu * T)), 1e-10));
}

TEST_CASE("maximize_1d finds the Fock-3 fidelity peak", "[optimize]") {
    // f_3(eta, 0) = sqrt(1-eta^2) eta^3, maximal at sqrt(3/4)
    auto f = [](double eta) { return std::sqrt(1.0 - eta * eta) * eta * eta * eta; };
    const auto peak = maximize_1d(f, {0.0, 0.999});
    CHECK_THAT(peak.x, WithinAbs(std::sqrt(0.75), 1e-6));
    CHECK_THAT(peak.value, WithinAbs(0.32475952641916449, 1e-10));
}

TEST_CASE("maximize_1d never returns less than the best grid sample", "[optimize]") {
    // spiky profile: refinement cannot lose the coarse winner
    auto f = [](double x) { return std::cos(40.0 * x) + 0.3 * x; };
    OptimConfig cfg;
    cfg.grid_points_per_axis = 64;
    double best_grid = -1e300;
    for (int i = 0; i < 64; ++i) best_grid = std::max(best_grid, f(i / 63.0));
    const auto peak = maximize_1d(f, {0.0, 1.0}, cfg);
    CHECK(peak.value >= best_grid);
    CHECK(peak.x >= 0.0);
    CHECK(peak.x <= 1.0);
}

TEST_CASE("maximize_1d propagates non-finite objectives with the offending point", "[optimize]") {
    auto f = [](double x) { return x < 0.5 ? x : std::numeric_limits<double>::quiet_NaN(); };
    try {
        maximize_1d(f, {0.0, 1.0});
        FAIL("expected non_finite_error");
    } catch (const non_finite_error& e) {
        CHECK(e.x >= 0.5);
    }
}

TEST_CASE("maximize_2d separable quadratic", "[optimize]") {
    const auto scan = maximize_2d([](double x, double y) { return -x * x - y * y; }, {-1.0, 1.0}, {-1.0, 1.0});
    CHECK_THAT(scan.global.x, WithinAbs(0.0, 1e-8));
    CHECK_THAT(scan.global.y, WithinAbs(0.0, 1e-8));
    CHECK(scan.local_maxima.size() == 1);
}

TEST_CASE("maximize_2d reports every strict local maximum of a two-bump surface", "[optimize]") {
    auto f = [](double x, double y) {
        auto bump = [](double cx, double cy, double h, double x_, double y_) {
            const double dx = x_ - cx, dy = y_ - cy;
            return h * std::exp(-200.0 * (dx * dx + dy * dy));
        };
        return bump(0.25, 0.3, 1.0, x, y) + bump(0.75, 0.7, 0.6, x, y);
    };
    const auto scan = maximize_2d(f, {0.0, 1.0}, {0.0, 1.0});
    REQUIRE(scan.local_maxima.size() == 2);
    CHECK_THAT(scan.global.x, WithinAbs(0.25, 1e-6));
    CHECK_THAT(scan.global.y, WithinAbs(0.3, 1e-6));
    CHECK_THAT(scan.local_maxima[1].x, WithinAbs(0.75, 1e-6));
    CHECK_THAT(scan.local_maxima[1].value, WithinAbs(0.6, 1e-9));
    CHECK(scan.global.value > scan.local_maxima[1].value);
}

TEST_CASE("maximize_2d handles a boundary peak", "[optimize]") {
    // decreasing in y: peak pinned to the y = 0 edge
    auto f = [](double x, double y) { return -(x - 0.4) * (x - 0.4) - 0.5 * y; };
    const auto scan = maximize_2d(f, {0.0, 1.0}, {0.0, 2.0});
    CHECK_THAT(scan.global.x, WithinAbs(0.4, 1e-7));
    CHECK_THAT(scan.global.y, WithinAbs(0.0, 1e-6));
}

TEST_CASE("optimizers are deterministic bit for bit", "[optimize]") {
    auto f = [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y) - 0.1 * x * y; };
    const auto a = maximize_2d(f, {0.0, 2.0}, {0.0, 2.0});
    const auto b = maximize_2d(f, {0.0, 2.0}, {0.0, 2.0});
    CHECK(std::memcmp(&a.global, &b.global, sizeof a.global) == 0);
    REQUIRE(a.local_maxima.size() == b.local_maxima.size());
    for (std::size_t i = 0; i < a.local_maxima.size(); ++i)
        CHECK(std::memcmp(&a.local_maxima[i], &b.local_maxima[i], sizeof(Peak2D)) == 0);

    auto g = [](double x) { return -(x - 0.123456) * (x - 0.123456); };
    const auto p1 = maximize_1d(g, {0.0, 1.0});
    const auto p2 = maximize_1d(g, {0.0, 1.0});
    CHECK(std::memcmp(&p1, &p2, sizeof p1) == 0);
}

TEST_CASE("optimizer configs are validated", "[optimize]") {
    OptimConfig cfg;
    cfg.grid_points_per_axis = 4;
    CHECK_THROWS_AS(maximize_1d([](double x) { return x; }, {0.0, 1.0}, cfg), std::invalid_argument);
    cfg = {};
    cfg.refine_tol = 0.0;
    CHECK_THROWS_AS(maximize_1d([](double x) { return x; }, {0.0, 1.0}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(maximize_1d([](double x) { return x; }, {1.0, 1.0}), std::invalid_argument);
}
