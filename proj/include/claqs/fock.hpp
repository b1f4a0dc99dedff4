#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gaussian.hpp"
#include "special_functions.hpp"

namespace claqs {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// state family parameters
// ---------------------------------------------------------------------------

struct FockState {
    int n = 0;
};
struct CoherentState {
    Complex alpha{};
};
struct ThermalState {
    double eta = 0.0;  // Boltzmann ratio, 0 <= eta < 1; nbar = eta/(1-eta)
};
struct DisplacedThermalState {
    double eta = 0.0;
    Complex alpha{};
};
struct SqueezedVacuumState {
    double nbar = 0.0;
};
struct CoherentPhaseState {
    Complex eps{};  // |eps| < 1
};
struct GaussianState {
    GaussianParams params{};
};

using StateSpec = std::variant<FockState, CoherentState, ThermalState, DisplacedThermalState, SqueezedVacuumState,
                               CoherentPhaseState, GaussianState>;

inline double thermal_eta_from_nbar(double nbar) {
    if (!(nbar >= 0.0)) throw std::domain_error("thermal_eta_from_nbar: nbar must be >= 0");
    return nbar / (1.0 + nbar);
}

inline double thermal_nbar_from_eta(double eta) {
    if (!(eta >= 0.0) || !(eta < 1.0)) throw std::domain_error("thermal_nbar_from_eta: eta must lie in [0,1)");
    return eta / (1.0 - eta);
}

/// Purity of a thermal state, (1-eta)/(1+eta); independent of displacement.
inline double thermal_purity_closed(double eta) {
    if (!(eta >= 0.0) || !(eta < 1.0)) throw std::domain_error("thermal_purity_closed: eta must lie in [0,1)");
    return (1.0 - eta) / (1.0 + eta);
}

inline void validate_spec(const StateSpec& spec) {
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FockState>) {
                if (s.n < 0) throw std::domain_error("FockState: n must be >= 0");
            } else if constexpr (std::is_same_v<S, ThermalState>) {
                if (!(s.eta >= 0.0) || !(s.eta < 1.0)) throw std::domain_error("ThermalState: eta must lie in [0,1)");
            } else if constexpr (std::is_same_v<S, DisplacedThermalState>) {
                if (!(s.eta >= 0.0) || !(s.eta < 1.0))
                    throw std::domain_error("DisplacedThermalState: eta must lie in [0,1)");
            } else if constexpr (std::is_same_v<S, SqueezedVacuumState>) {
                if (!(s.nbar >= 0.0)) throw std::domain_error("SqueezedVacuumState: nbar must be >= 0");
            } else if constexpr (std::is_same_v<S, CoherentPhaseState>) {
                if (!(std::abs(s.eps) < 1.0)) throw std::domain_error("CoherentPhaseState: |eps| must be < 1");
            } else if constexpr (std::is_same_v<S, GaussianState>) {
                validate(s.params);
            }
        },
        spec);
}

/// Mean number of quanta of the state; used by the truncation policy and
/// the default search-box radius.
inline double mean_quanta(const StateSpec& spec) {
    validate_spec(spec);
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FockState>) return static_cast<double>(s.n);
            if constexpr (std::is_same_v<S, CoherentState>) return std::norm(s.alpha);
            if constexpr (std::is_same_v<S, ThermalState>) return thermal_nbar_from_eta(s.eta);
            if constexpr (std::is_same_v<S, DisplacedThermalState>)
                return thermal_nbar_from_eta(s.eta) + std::norm(s.alpha);
            if constexpr (std::is_same_v<S, SqueezedVacuumState>) return s.nbar;
            if constexpr (std::is_same_v<S, CoherentPhaseState>) return thermal_nbar_from_eta(std::norm(s.eps));
            if constexpr (std::is_same_v<S, GaussianState>) {
                const GaussianMuT mt = gaussian_mu_T(s.params);
                return mt.nbar + 0.5 * (s.params.d_q * s.params.d_q + s.params.d_p * s.params.d_p);
            }
        },
        spec);
}

// ---------------------------------------------------------------------------
// FockDensity
// ---------------------------------------------------------------------------

/// Truncated Fock-basis density matrix over |0> .. |dim-1>.  `tail_bound`
/// estimates the probability mass lost to the truncation; the trace of
/// `rho` is 1 - tail_bound up to rounding.  Values are immutable once
/// built; every operation below is a pure function.
struct FockDensity {
    Eigen::MatrixXcd rho;
    double tail_bound = 0.0;
    int dim() const { return static_cast<int>(rho.rows()); }
};

// ---------------------------------------------------------------------------
// operator matrices
// ---------------------------------------------------------------------------

/// <m|D(alpha)|n> for m,n < dim.  For m >= n the closed form
///   sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{m-n}(|alpha|^2)
/// with the magnitude assembled in log space; for m < n the symmetry
/// <m|D(alpha)|n> = conj(<n|D(-alpha)|m>).
inline Eigen::MatrixXcd displacement_matrix(Complex alpha, int dim) {
    if (dim < 1) throw std::invalid_argument("displacement_matrix: dim must be >= 1");
    const double r = std::norm(alpha);
    if (r == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd d(dim, dim);
    const double ln_abs = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n <= m; ++n) {
            const int k = m - n;
            const double mag = std::exp(0.5 * (log_factorial(n) - log_factorial(m)) + k * ln_abs - 0.5 * r);
            const double lag = laguerre_assoc(n, k, r);
            d(m, n) = mag * lag * std::polar(1.0, phase * k);
            if (m != n)
                d(n, m) = std::conj(mag * lag * std::polar(1.0, (phase + std::numbers::pi) * k));
        }
    }
    return d;
}

/// Columns 0..ncols-1 (rows 0..dim-1) of the squeeze operator
/// S(xi) = exp((xi* a^2 - xi a'^2)/2), xi = r e^{i theta}, by the
/// parity-conserving two-term recurrence.  Each element depends only on
/// lower indices, so the values are truncation independent.  The forward
/// error grows along the recurrence in high columns at strong squeezing;
/// extended precision pushes the breakdown a dozen columns further out, and
/// callers that mix many columns gate on the column norms (see build_state).
inline Eigen::MatrixXcd squeeze_columns(Complex xi, int dim, int ncols) {
    if (dim < 1 || ncols < 1 || ncols > dim) throw std::invalid_argument("squeeze_columns: bad dimensions");
    const double r = std::abs(xi);
    if (r == 0.0) return Eigen::MatrixXcd::Identity(dim, ncols);
    using XComplex = std::complex<long double>;
    using XMatrix = Eigen::Matrix<XComplex, Eigen::Dynamic, Eigen::Dynamic>;
    XMatrix s = XMatrix::Zero(dim, ncols);
    const long double tanh_r = std::tanh(static_cast<long double>(r));
    const long double theta = std::arg(xi);
    const XComplex ett = std::polar(tanh_r, theta);
    const long double sech = 1.0L / std::cosh(static_cast<long double>(r));
    s(0, 0) = std::sqrt(sech);
    for (int m = 2; m < dim; m += 2) s(m, 0) = std::sqrt((m - 1.0L) / m) * (-ett) * s(m - 2, 0);
    for (int n = 1; n < ncols; ++n) {
        for (int m = n % 2; m < dim; m += 2) {
            XComplex v = 0.0L;
            if (n >= 2) v += std::sqrt((n - 1.0L) / n) * std::conj(ett) * s(m, n - 2);
            if (m >= 1) v += std::sqrt(static_cast<long double>(m) / n) * sech * s(m - 1, n - 1);
            s(m, n) = v;
        }
    }
    return s.cast<Complex>();
}

inline Eigen::MatrixXcd squeeze_matrix(Complex xi, int dim) { return squeeze_columns(xi, dim, dim); }

// ---------------------------------------------------------------------------
// photon-number distributions (closed forms)
// ---------------------------------------------------------------------------

/// p_n of the displaced thermal state,
///   p_n = (1-eta) eta^n e^{-|alpha|^2 (1-eta)} L_n(-|alpha|^2 (1-eta)^2/eta),
/// returned for n = 0..count-1 in one stable forward pass (the eta^n L_n
/// pair is evaluated jointly, so eta -> 0 degrades gracefully to the
/// Poisson weights).
inline std::vector<double> displaced_thermal_pn(double eta, double alpha_sq, int count) {
    if (!(eta >= 0.0) || !(eta < 1.0)) throw std::domain_error("displaced_thermal_pn: eta must lie in [0,1)");
    if (!(alpha_sq >= 0.0)) throw std::domain_error("displaced_thermal_pn: alpha_sq must be >= 0");
    if (count < 1) throw std::invalid_argument("displaced_thermal_pn: count must be >= 1");
    const double om = 1.0 - eta;
    const double c = alpha_sq * om * om;
    const double pref = om * std::exp(-alpha_sq * om);
    std::vector<double> p(static_cast<std::size_t>(count));
    double prev = 1.0;
    double cur = eta + c;
    p[0] = pref;
    if (count > 1) p[1] = pref * cur;
    const double eta2 = eta * eta;
    for (int m = 1; m + 1 < count; ++m) {
        const double next = (((2.0 * m + 1.0) * eta + c) * cur - m * eta2 * prev) / (m + 1.0);
        prev = cur;
        cur = next;
        p[static_cast<std::size_t>(m) + 1] = pref * cur;
    }
    return p;
}

/// p_{2m} of the squeezed vacuum with mean quanta nbar,
///   p_{2m} = (1+nbar)^{-1/2} (2m)!/(2^m m!)^2 (nbar/(1+nbar))^m,
/// zero at odd n.  Log-space so large m cannot overflow.
inline double squeezed_vacuum_pn(double nbar, int n) {
    if (!(nbar >= 0.0)) throw std::domain_error("squeezed_vacuum_pn: nbar must be >= 0");
    if (n < 0) throw std::domain_error("squeezed_vacuum_pn: n must be >= 0");
    if (n % 2 != 0) return 0.0;
    if (n == 0) return 1.0 / std::sqrt(1.0 + nbar);
    if (nbar == 0.0) return 0.0;
    const int m = n / 2;
    const double ln = -0.5 * std::log1p(nbar) + log_factorial(2 * m) - 2.0 * (m * std::numbers::ln2 + log_factorial(m)) +
                      m * (std::log(nbar) - std::log1p(nbar));
    return std::exp(ln);
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

namespace detail {

inline Eigen::VectorXcd coherent_amplitudes(Complex alpha, int dim) {
    Eigen::VectorXcd c(dim);
    const double r = std::norm(alpha);
    if (r == 0.0) {
        c.setZero();
        c(0) = 1.0;
        return c;
    }
    const double ln_abs = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    for (int m = 0; m < dim; ++m)
        c(m) = std::exp(m * ln_abs - 0.5 * r - 0.5 * log_factorial(m)) * std::polar(1.0, phase * m);
    return c;
}

[[noreturn]] inline void throw_dim_too_small(const char* family, int dim, double tail, double tol) {
    throw std::runtime_error(std::string(family) + ": dim=" + std::to_string(dim) +
                             " leaves truncation tail " + std::to_string(tail) + " above the tolerance " +
                             std::to_string(tol) + "; increase dim");
}

}  // namespace detail

/// Truncated density matrix of any supported family.
///
/// Pure families are built as outer products of their amplitude vectors
/// (squeezed-vacuum amplitudes taken real non-negative; no measure here
/// depends on that phase).  DisplacedThermal conjugates the geometric
/// diagonal with displacement_matrix.  Gaussian states are built as
/// S(xi) rho_th(eta0) S(xi)' then displaced, with (eta0, xi) from
/// gaussian_factors; thermal columns are mixed until their weight is
/// negligible or the squeeze recurrence loses column normalization, and
/// whatever weight is left out lands in tail_bound.
///
/// Throws std::runtime_error when `dim` cannot meet `tail_tol`.
inline FockDensity build_state(const StateSpec& spec, int dim, double tail_tol = 1e-6) {
    if (dim < 1) throw std::invalid_argument("build_state: dim must be >= 1");
    validate_spec(spec);
    FockDensity out;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FockState>) {
                if (s.n >= dim)
                    throw std::runtime_error("build_state: Fock index " + std::to_string(s.n) +
                                             " does not fit in dim=" + std::to_string(dim));
                out.rho = Eigen::MatrixXcd::Zero(dim, dim);
                out.rho(s.n, s.n) = 1.0;
                out.tail_bound = 0.0;
            } else if constexpr (std::is_same_v<S, CoherentState>) {
                const Eigen::VectorXcd c = detail::coherent_amplitudes(s.alpha, dim);
                out.rho = c * c.adjoint();
                out.tail_bound = std::max(0.0, 1.0 - c.squaredNorm());
                if (out.tail_bound > tail_tol) detail::throw_dim_too_small("build_state(Coherent)", dim, out.tail_bound, tail_tol);
            } else if constexpr (std::is_same_v<S, ThermalState>) {
                const double omitted = std::pow(s.eta, dim);
                if (s.eta > 0.0 && omitted / (1.0 - s.eta) >= tail_tol)
                    detail::throw_dim_too_small("build_state(Thermal)", dim, omitted / (1.0 - s.eta), tail_tol);
                out.rho = Eigen::MatrixXcd::Zero(dim, dim);
                double w = 1.0 - s.eta;
                for (int k = 0; k < dim; ++k) {
                    out.rho(k, k) = w;
                    w *= s.eta;
                }
                out.tail_bound = omitted;
            } else if constexpr (std::is_same_v<S, DisplacedThermalState>) {
                const double omitted = std::pow(s.eta, dim);
                if (s.eta > 0.0 && omitted / (1.0 - s.eta) >= tail_tol)
                    detail::throw_dim_too_small("build_state(DisplacedThermal)", dim, omitted / (1.0 - s.eta), tail_tol);
                Eigen::VectorXd w(dim);
                double wk = 1.0 - s.eta;
                for (int k = 0; k < dim; ++k) {
                    w(k) = wk;
                    wk *= s.eta;
                }
                const Eigen::MatrixXcd d = displacement_matrix(s.alpha, dim);
                out.rho = d * w.asDiagonal() * d.adjoint();
                out.tail_bound = std::max(0.0, 1.0 - out.rho.trace().real());
            } else if constexpr (std::is_same_v<S, SqueezedVacuumState>) {
                Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
                double mass = 0.0;
                for (int n = 0; n < dim; n += 2) {
                    const double pn = squeezed_vacuum_pn(s.nbar, n);
                    c(n) = std::sqrt(pn);
                    mass += pn;
                }
                out.rho = c * c.adjoint();
                out.tail_bound = std::max(0.0, 1.0 - mass);
                if (out.tail_bound > tail_tol)
                    detail::throw_dim_too_small("build_state(SqueezedVacuum)", dim, out.tail_bound, tail_tol);
            } else if constexpr (std::is_same_v<S, CoherentPhaseState>) {
                Eigen::VectorXcd c(dim);
                const Complex eps = s.eps;
                Complex p = std::sqrt(1.0 - std::norm(eps));
                for (int n = 0; n < dim; ++n) {
                    c(n) = p;
                    p *= eps;
                }
                out.rho = c * c.adjoint();
                out.tail_bound = std::pow(std::norm(eps), dim);
                if (out.tail_bound > tail_tol)
                    detail::throw_dim_too_small("build_state(CoherentPhase)", dim, out.tail_bound, tail_tol);
            } else if constexpr (std::is_same_v<S, GaussianState>) {
                const GaussianFactors fac = gaussian_factors(s.params);
                int ncols = 1;
                if (fac.eta0 > 0.0) {
                    const double target = std::min(1e-13, 0.01 * tail_tol);
                    ncols = std::min(dim, static_cast<int>(std::ceil(std::log(target) / std::log(fac.eta0))) + 1);
                    ncols = std::max(ncols, 1);
                }
                const Eigen::MatrixXcd cols = squeeze_columns(std::polar(fac.r, fac.theta), dim, ncols);
                // a column norm below 1 is honest truncation loss (the
                // elements are exact) and stays; a norm above 1 signals
                // recurrence contamination and ends the mixture there
                int used = 0;
                for (; used < ncols; ++used) {
                    if (cols.col(used).squaredNorm() > 1.0 + 1e-6) break;
                }
                if (used == 0)
                    throw std::runtime_error("build_state(Gaussian): squeeze recurrence unusable at dim=" +
                                             std::to_string(dim));
                Eigen::VectorXd w(used);
                double wk = 1.0 - fac.eta0;
                for (int k = 0; k < used; ++k) {
                    w(k) = wk;
                    wk *= fac.eta0;
                }
                const Eigen::MatrixXcd scaled = cols.leftCols(used) * w.cwiseSqrt().asDiagonal();
                out.rho = scaled * scaled.adjoint();
                const Complex alpha = Complex(s.params.d_q, s.params.d_p) / std::numbers::sqrt2;
                if (std::norm(alpha) > 0.0) {
                    const Eigen::MatrixXcd d = displacement_matrix(alpha, dim);
                    out.rho = d * out.rho * d.adjoint();
                }
                out.tail_bound = std::max(0.0, 1.0 - out.rho.trace().real());
                if (out.tail_bound > tail_tol)
                    detail::throw_dim_too_small("build_state(Gaussian)", dim, out.tail_bound, tail_tol);
            }
        },
        spec);
    return out;
}

// ---------------------------------------------------------------------------
// scalar operations
// ---------------------------------------------------------------------------

/// Tr(rho^2) = sum |<m|rho|n>|^2.
inline double purity(const FockDensity& state) { return state.rho.squaredNorm(); }

/// Tr(rho1 rho2).  Real in exact arithmetic for Hermitian inputs; an
/// imaginary residue above 1e-12 (relative) indicates a broken input and
/// throws.
inline double hs_inner(const FockDensity& a, const FockDensity& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("hs_inner: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    const Complex t = a.rho.cwiseProduct(b.rho.conjugate()).sum();
    const double scale = std::max(1.0, std::abs(t.real()));
    if (std::abs(t.imag()) > 1e-12 * scale)
        throw std::runtime_error("hs_inner: imaginary residue " + std::to_string(t.imag()) +
                                 " exceeds tolerance; inputs are not Hermitian");
    return t.real();
}

/// p_0..p_{n_max} of the state's photon-number distribution, from closed
/// forms for every family that has one; Gaussian states read the diagonal
/// of their constructed matrix.
inline std::vector<double> photon_distribution(const StateSpec& spec, int n_max) {
    if (n_max < 0) throw std::invalid_argument("photon_distribution: n_max must be >= 0");
    validate_spec(spec);
    const int count = n_max + 1;
    return std::visit(
        [&](const auto& s) -> std::vector<double> {
            using S = std::decay_t<decltype(s)>;
            std::vector<double> p(static_cast<std::size_t>(count), 0.0);
            if constexpr (std::is_same_v<S, FockState>) {
                if (s.n < count) p[static_cast<std::size_t>(s.n)] = 1.0;
            } else if constexpr (std::is_same_v<S, CoherentState>) {
                const double nb = std::norm(s.alpha);
                double v = std::exp(-nb);
                for (int n = 0; n < count; ++n) {
                    p[static_cast<std::size_t>(n)] = v;
                    v *= nb / (n + 1.0);
                }
            } else if constexpr (std::is_same_v<S, ThermalState>) {
                double v = 1.0 - s.eta;
                for (int n = 0; n < count; ++n) {
                    p[static_cast<std::size_t>(n)] = v;
                    v *= s.eta;
                }
            } else if constexpr (std::is_same_v<S, DisplacedThermalState>) {
                return displaced_thermal_pn(s.eta, std::norm(s.alpha), count);
            } else if constexpr (std::is_same_v<S, SqueezedVacuumState>) {
                for (int n = 0; n < count; n += 2) p[static_cast<std::size_t>(n)] = squeezed_vacuum_pn(s.nbar, n);
            } else if constexpr (std::is_same_v<S, CoherentPhaseState>) {
                const double x = std::norm(s.eps);
                double v = 1.0 - x;
                for (int n = 0; n < count; ++n) {
                    p[static_cast<std::size_t>(n)] = v;
                    v *= x;
                }
            } else if constexpr (std::is_same_v<S, GaussianState>) {
                const Eigen::VectorXd diag = build_state(spec, count, /*tail_tol=*/1.0).rho.diagonal().real();
                for (int n = 0; n < count; ++n) p[static_cast<std::size_t>(n)] = std::max(0.0, diag(n));
            }
            return p;
        },
        spec);
}

// ---------------------------------------------------------------------------
// truncation policy
// ---------------------------------------------------------------------------

/// Default truncation dimension, max(32, ceil(12 (nbar + 1))).
inline int default_dim(const StateSpec& spec) {
    return std::max(32, static_cast<int>(std::ceil(12.0 * (mean_quanta(spec) + 1.0))));
}

/// Upper bound on the probability mass beyond |dim-1>, from the family's
/// closed form where one exists; for geometric families this is the
/// conservative eta^dim/(1-eta) that gates the constructor, so a dimension
/// accepted here always builds.  Displaced Gaussian states fall back to
/// constructing the state.
inline double truncation_tail_estimate(const StateSpec& spec, int dim) {
    if (dim < 1) throw std::invalid_argument("truncation_tail_estimate: dim must be >= 1");
    validate_spec(spec);
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FockState>) {
                return s.n < dim ? 0.0 : 1.0;
            } else if constexpr (std::is_same_v<S, ThermalState>) {
                return s.eta > 0.0 ? std::pow(s.eta, dim) / (1.0 - s.eta) : 0.0;
            } else if constexpr (std::is_same_v<S, CoherentPhaseState>) {
                return std::pow(std::norm(s.eps), dim);
            } else if constexpr (std::is_same_v<S, CoherentState>) {
                const double nb = std::norm(s.alpha);
                double v = std::exp(-nb), mass = 0.0;
                for (int n = 0; n < dim; ++n) {
                    mass += v;
                    v *= nb / (n + 1.0);
                }
                return std::max(0.0, 1.0 - mass);
            } else if constexpr (std::is_same_v<S, DisplacedThermalState>) {
                const auto p = displaced_thermal_pn(s.eta, std::norm(s.alpha), dim);
                double mass = 0.0;
                for (const double v : p) mass += v;
                const double gate = s.eta > 0.0 ? std::pow(s.eta, dim) / (1.0 - s.eta) : 0.0;
                return std::max(std::max(0.0, 1.0 - mass), gate);
            } else if constexpr (std::is_same_v<S, SqueezedVacuumState>) {
                double mass = 0.0;
                for (int n = 0; n < dim; n += 2) mass += squeezed_vacuum_pn(s.nbar, n);
                return std::max(0.0, 1.0 - mass);
            } else if constexpr (std::is_same_v<S, GaussianState>) {
                if (s.params.d_q == 0.0 && s.params.d_p == 0.0) {
                    const GaussianMuT mt = gaussian_mu_T(s.params);
                    const auto p = gaussian_pn_closed(mt.mu, mt.T, dim);
                    double mass = 0.0;
                    for (const double v : p) mass += v;
                    return std::max(0.0, 1.0 - mass);
                }
                return build_state(spec, dim, /*tail_tol=*/1.0).tail_bound;
            }
        },
        spec);
}

/// Smallest power-of-two-ish dimension (grown from the default policy) whose
/// truncation tail is below `tail_tol`.
inline int choose_dim(const StateSpec& spec, double tail_tol = 1e-10, int min_dim = 32) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("choose_dim: tail_tol must be positive");
    int dim = std::max(min_dim, default_dim(spec));
    constexpr int kMaxDim = 16384;
    while (dim <= kMaxDim) {
        if (truncation_tail_estimate(spec, dim) < tail_tol) return dim;
        dim *= 2;
    }
    throw std::runtime_error("choose_dim: tail tolerance unreachable below dim=16384");
}

}  // namespace claqs
