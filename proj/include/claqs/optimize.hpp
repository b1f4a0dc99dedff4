#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace claqs {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Settings for the deterministic coarse-grid + golden-section maximizers.
/// `refine_tol` is measured in parameter space relative to the interval
/// width; `max_refine_iters` caps the evaluations of one golden-section
/// pass.  `bounds` lets callers that own a search box pass it along.
struct OptimConfig {
    int grid_points_per_axis = 64;
    double refine_tol = 1e-8;
    int max_refine_iters = 200;
    std::vector<Interval> bounds;
};

/// Thrown when the objective produces a non-finite value; carries the
/// offending coordinates.
struct non_finite_error : std::runtime_error {
    non_finite_error(double x_, double y_, const std::string& msg) : std::runtime_error(msg), x(x_), y(y_) {}
    double x;
    double y;
};

struct Peak1D {
    double x = 0.0;
    double value = 0.0;
    double tol = 0.0;  // final bracket width
};

struct Peak2D {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    double tol = 0.0;
};

struct Scan2D {
    Peak2D global{};
    std::vector<Peak2D> local_maxima;  // every refined strict grid maximum, best first
};

namespace detail {

inline void check_config(const OptimConfig& cfg) {
    if (cfg.grid_points_per_axis < 8) throw std::invalid_argument("OptimConfig: grid_points_per_axis must be >= 8");
    if (!(cfg.refine_tol > 0.0)) throw std::invalid_argument("OptimConfig: refine_tol must be positive");
    if (cfg.max_refine_iters < 1) throw std::invalid_argument("OptimConfig: max_refine_iters must be >= 1");
}

inline void check_interval(const Interval& b, const char* who) {
    if (!(b.hi > b.lo) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
        throw std::invalid_argument(std::string(who) + ": bounds must be a finite non-degenerate interval");
}

template <class F>
double eval1(F& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw non_finite_error(x, 0.0, "objective returned non-finite value at x=" + std::to_string(x));
    return v;
}

template <class F>
double eval2(F& f, double x, double y) {
    const double v = f(x, y);
    if (!std::isfinite(v))
        throw non_finite_error(x, y, "objective returned non-finite value at (x,y)=(" + std::to_string(x) + "," + std::to_string(y) + ")");
    return v;
}

/// Golden-section ascent on [a,b].  Keeps the running best across every
/// evaluation so the result can never fall below the caller's seed.
template <class F>
void golden_ascent(F& f, double a, double b, double tol_abs, int max_evals, double& best_x, double& best_f,
                   double& width_out) {
    constexpr double invphi = 0.61803398874989484820;
    auto consider = [&](double x, double v) {
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    };
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = eval1(f, x1);
    double f2 = eval1(f, x2);
    consider(x1, f1);
    consider(x2, f2);
    int evals = 2;
    while (b - a > tol_abs && evals < max_evals) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = eval1(f, x2);
            consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = eval1(f, x1);
            consider(x1, f1);
        }
        ++evals;
    }
    width_out = b - a;
}

}  // namespace detail

/// Coarse grid scan followed by golden-section refinement around the best
/// cell.  Deterministic for fixed config; the refined point never leaves
/// the bounds and never scores below the best coarse sample.
template <class F>
Peak1D maximize_1d(F&& f, Interval bounds, const OptimConfig& cfg = {}) {
    detail::check_config(cfg);
    detail::check_interval(bounds, "maximize_1d");
    const int n = cfg.grid_points_per_axis;
    const double width = bounds.hi - bounds.lo;
    const double step = width / (n - 1);

    int best_i = 0;
    double best_f = -std::numeric_limits<double>::infinity();
    double best_x = bounds.lo;
    for (int i = 0; i < n; ++i) {
        const double x = bounds.lo + step * i;
        const double v = detail::eval1(f, x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
            best_i = i;
        }
    }
    const double a = bounds.lo + step * std::max(0, best_i - 1);
    const double b = bounds.lo + step * std::min(n - 1, best_i + 1);
    double tol = b - a;
    detail::golden_ascent(f, a, b, cfg.refine_tol * width, cfg.max_refine_iters, best_x, best_f, tol);

    // parabolic vertex polish: pure comparisons cannot localize an interior
    // maximum below sqrt(eps)*scale, the three-point vertex can
    const double eps_f = 8.0 * std::abs(best_f) * std::numeric_limits<double>::epsilon();
    const double h = 1e-5 * width;
    if (best_x - h > bounds.lo && best_x + h < bounds.hi) {
        const double fm = detail::eval1(f, best_x - h);
        const double fp = detail::eval1(f, best_x + h);
        const double denom = fm - 2.0 * best_f + fp;
        if (denom < 0.0 && fm <= best_f && fp <= best_f) {
            const double vx = best_x + 0.5 * h * (fm - fp) / denom;
            const double fv = detail::eval1(f, vx);
            if (fv >= best_f - eps_f) {
                best_x = vx;
                best_f = std::max(best_f, fv);
            }
        }
    }
    // a maximum that double precision cannot distinguish from an interval
    // endpoint snaps onto it
    for (const double edge : {bounds.lo, bounds.hi}) {
        if (best_x != edge && std::abs(best_x - edge) <= step) {
            const double fe = detail::eval1(f, edge);
            if (fe >= best_f - eps_f) {
                best_x = edge;
                best_f = std::max(best_f, fe);
                break;
            }
        }
    }
    return {best_x, best_f, tol};
}

namespace detail {

/// Cyclic per-axis golden-section ascent inside the 3x3-cell bracket of a
/// grid local maximum.
template <class F>
Peak2D refine_cell(F& f, double x0, double y0, double v0, Interval cell_x, Interval cell_y, double tol_x, double tol_y,
                   int max_evals) {
    double x = x0, y = y0, v = v0;
    double wx = cell_x.hi - cell_x.lo;
    double wy = cell_y.hi - cell_y.lo;
    for (int cycle = 0; cycle < 8; ++cycle) {
        const double px = x, py = y;
        {
            auto fx = [&](double xx) { return eval2(f, xx, y); };
            detail::golden_ascent(fx, cell_x.lo, cell_x.hi, tol_x, max_evals, x, v, wx);
        }
        {
            auto fy = [&](double yy) { return eval2(f, x, yy); };
            detail::golden_ascent(fy, cell_y.lo, cell_y.hi, tol_y, max_evals, y, v, wy);
        }
        if (std::abs(x - px) < tol_x && std::abs(y - py) < tol_y) break;
    }
    return {x, y, v, std::max(wx, wy)};
}

}  // namespace detail

/// Full grid scan that reports every strict local maximum among the grid
/// cells (8-neighborhood, boundary aware), refines each one, and returns
/// the global peak together with the refined list.  Callers that care about
/// global-versus-local structure read `local_maxima`; callers that only
/// want the maximum read `global`.
template <class F>
Scan2D maximize_2d(F&& f, Interval bounds_x, Interval bounds_y, const OptimConfig& cfg = {}) {
    detail::check_config(cfg);
    detail::check_interval(bounds_x, "maximize_2d");
    detail::check_interval(bounds_y, "maximize_2d");
    const int n = cfg.grid_points_per_axis;
    const double wx = bounds_x.hi - bounds_x.lo;
    const double wy = bounds_y.hi - bounds_y.lo;
    const double sx = wx / (n - 1);
    const double sy = wy / (n - 1);

    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid[static_cast<std::size_t>(i) * n + j] = detail::eval2(f, bounds_x.lo + sx * i, bounds_y.lo + sy * j);

    auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(i) * n + j]; };

    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = at(i, j);
            bool strict = true;
            for (int di = -1; di <= 1 && strict; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
                    if (at(ii, jj) >= v) {
                        strict = false;
                        break;
                    }
                }
            }
            if (strict) cells.emplace_back(i, j);
        }
    }
    if (cells.empty()) {
        // flat grid: fall back to the best sample
        int bi = 0, bj = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (at(i, j) > at(bi, bj)) {
                    bi = i;
                    bj = j;
                }
        cells.emplace_back(bi, bj);
    }

    const double tol_x = cfg.refine_tol * wx;
    const double tol_y = cfg.refine_tol * wy;
    std::vector<Peak2D> peaks;
    for (const auto& [i, j] : cells) {
        const Interval cx{bounds_x.lo + sx * std::max(0, i - 1), bounds_x.lo + sx * std::min(n - 1, i + 1)};
        const Interval cy{bounds_y.lo + sy * std::max(0, j - 1), bounds_y.lo + sy * std::min(n - 1, j + 1)};
        peaks.push_back(detail::refine_cell(f, bounds_x.lo + sx * i, bounds_y.lo + sy * j, at(i, j), cx, cy, tol_x,
                                            tol_y, cfg.max_refine_iters));
    }

    std::sort(peaks.begin(), peaks.end(), [](const Peak2D& a, const Peak2D& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });

    // neighbours that refined into the same peak collapse to one entry
    Scan2D out;
    for (const auto& p : peaks) {
        bool dup = false;
        for (const auto& kept : out.local_maxima) {
            if (std::abs(p.x - kept.x) < 0.75 * sx && std::abs(p.y - kept.y) < 0.75 * sy) {
                dup = true;
                break;
            }
        }
        if (!dup) out.local_maxima.push_back(p);
    }
    out.global = out.local_maxima.front();
    return out;
}

}  // namespace claqs
