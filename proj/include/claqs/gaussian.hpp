#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "measure_result.hpp"

namespace claqs {

/// Single-mode Gaussian state: quadrature (co)variances and displacements.
/// Dimensionless convention hbar = 1, vacuum variance 1/2.
struct GaussianParams {
    double sigma_q = 0.5;
    double sigma_p = 0.5;
    double sigma_pq = 0.0;
    double d_q = 0.0;
    double d_p = 0.0;
};

inline void validate(const GaussianParams& g) {
    if (!(g.sigma_q > 0.0) || !(g.sigma_p > 0.0))
        throw std::domain_error("GaussianParams: variances must be positive");
    const double det = g.sigma_q * g.sigma_p - g.sigma_pq * g.sigma_pq;
    if (!(det >= 0.25 - 1e-12))
        throw std::domain_error("GaussianParams: uncertainty relation violated, sigma_q sigma_p - sigma_pq^2 < 1/4");
}

struct GaussianMuT {
    double mu;    // purity, (0,1]
    double T;     // sigma_p + sigma_q = 1 + 2 nbar of the unshifted state
    double nbar;  // (T-1)/2
};

/// Purity mu = [4(sigma_p sigma_q - sigma_pq^2)]^{-1/2} and T = sigma_p +
/// sigma_q.  mu is clamped into (0,1] against rounding at the pure boundary.
inline GaussianMuT gaussian_mu_T(const GaussianParams& g) {
    validate(g);
    const double det = g.sigma_q * g.sigma_p - g.sigma_pq * g.sigma_pq;
    const double mu = std::min(1.0, 0.5 / std::sqrt(det));
    const double T = g.sigma_p + g.sigma_q;
    return {mu, T, 0.5 * (T - 1.0)};
}

/// Renormalized overlap with the undisplaced thermal state of parameter eta:
///   F(eta) = 2 sqrt( mu (1-eta^2) / (a - 2 b eta + c eta^2) ),
/// a = 1 + mu^2 + 2 T mu^2, b = 1 - mu^2, c = 1 + mu^2 - 2 T mu^2.
inline double gaussian_F(const GaussianParams& g, double eta) {
    if (!(eta >= 0.0) || !(eta < 1.0)) throw std::domain_error("gaussian_F: eta must lie in [0,1)");
    const GaussianMuT mt = gaussian_mu_T(g);
    const double mu2 = mt.mu * mt.mu;
    const double a = 1.0 + mu2 + 2.0 * mt.T * mu2;
    const double b = 1.0 - mu2;
    const double c = 1.0 + mu2 - 2.0 * mt.T * mu2;
    return 2.0 * std::sqrt(mt.mu * (1.0 - eta * eta) / (a - 2.0 * b * eta + c * eta * eta));
}

/// Classicality of a Gaussian state, sqrt(2/(1 + mu T)), attained at
/// eta* = (1-mu)/(1+mu) and the state's own displacement.  The optimal
/// thermal reference shares the state's purity: (1-eta*)/(1+eta*) = mu.
inline MeasureResult gaussian_classicality(const GaussianParams& g) {
    const GaussianMuT mt = gaussian_mu_T(g);
    MeasureResult res;
    res.value = std::sqrt(2.0 / (1.0 + mt.mu * mt.T));
    res.argmax_eta = (1.0 - mt.mu) / (1.0 + mt.mu);
    res.argmax_alpha_sq = 0.5 * (g.d_q * g.d_q + g.d_p * g.d_p);
    res.method = Method::closed_form;
    return res;
}

/// F(eta) = mu^{-1/2} sqrt(1-eta^2) sum_n p_n eta^n from a photon-number
/// distribution.  The series stops once the remaining geometric bound
/// eta^{n+1}/(1-eta) (valid since p_n <= 1) drops below 1e-12.
inline double generating_function_F(std::span<const double> p, double mu, double eta) {
    if (!(mu > 0.0) || !(mu <= 1.0 + 1e-12)) throw std::domain_error("generating_function_F: mu must lie in (0,1]");
    if (!(eta >= 0.0) || !(eta < 1.0)) throw std::domain_error("generating_function_F: eta must lie in [0,1)");
    double total = 0.0;
    for (const double v : p) {
        if (!(v >= -1e-15)) throw std::domain_error("generating_function_F: p_n must be >= 0");
        total += v;
    }
    if (!(total <= 1.0 + 1e-9)) throw std::domain_error("generating_function_F: sum of p_n exceeds 1");
    double s = 0.0, ek = 1.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        s += p[n] * ek;
        ek *= eta;
        if (eta > 0.0 && ek / (1.0 - eta) < 1e-12) break;
    }
    return std::sqrt((1.0 - eta * eta) / std::min(mu, 1.0)) * s;
}

/// Photon-number distribution of the zero-displacement Gaussian state with
/// purity mu and T = 1 + 2 nbar, as Taylor coefficients of its generating
/// function G(z) = 2 mu (a - 2bz + cz^2)^{-1/2}:
///   a (n+1) p_{n+1} = b (2n+1) p_n - c n p_{n-1}.
/// p_n is the dominant solution of this recurrence, so the forward pass is
/// stable for every admissible (mu, T).
inline std::vector<double> gaussian_pn_closed(double mu, double T, int count) {
    if (!(mu > 0.0) || !(mu <= 1.0 + 1e-12)) throw std::domain_error("gaussian_pn_closed: mu must lie in (0,1]");
    if (!(mu * T >= 1.0 - 1e-12)) throw std::domain_error("gaussian_pn_closed: mu*T must be >= 1");
    if (count < 1) throw std::invalid_argument("gaussian_pn_closed: count must be >= 1");
    mu = std::min(mu, 1.0);
    const double mu2 = mu * mu;
    const double a = 1.0 + mu2 + 2.0 * T * mu2;
    const double b = 1.0 - mu2;
    const double c = 1.0 + mu2 - 2.0 * T * mu2;
    std::vector<double> p(static_cast<std::size_t>(count));
    p[0] = 2.0 * mu / std::sqrt(a);
    if (count > 1) p[1] = p[0] * b / a;
    for (int n = 1; n + 1 < count; ++n)
        p[static_cast<std::size_t>(n) + 1] =
            (b * (2.0 * n + 1.0) * p[static_cast<std::size_t>(n)] - c * n * p[static_cast<std::size_t>(n) - 1]) /
            (a * (n + 1.0));
    return p;
}

/// Mean-quanta threshold nbar_c = (1 - mu^2) / (2 mu^2) below which a mixed
/// Gaussian state of purity mu cannot be squeezed.  Diagnostic only; no
/// measure defined here depends on it.
inline double squeezing_threshold_nbar(double mu) {
    if (!(mu > 0.0) || !(mu <= 1.0 + 1e-12)) throw std::domain_error("squeezing_threshold_nbar: mu must lie in (0,1]");
    mu = std::min(mu, 1.0);
    return (1.0 - mu * mu) / (2.0 * mu * mu);
}

/// Thermal parameter, squeeze modulus and squeeze angle that generate the
/// given covariances as S(xi) rho_th(eta0) S(xi)^dagger with
/// xi = r e^{i theta}:
///   eta0 = (1-mu)/(1+mu),  r = ln(lmax/lmin)/4,
///   theta = atan2(-2 sigma_pq, sigma_p - sigma_q),
/// where lmin <= lmax are the eigenvalues of the covariance matrix.
struct GaussianFactors {
    double eta0;
    double r;
    double theta;
};

inline GaussianFactors gaussian_factors(const GaussianParams& g) {
    const GaussianMuT mt = gaussian_mu_T(g);
    const double eta0 = (1.0 - mt.mu) / (1.0 + mt.mu);
    const double h = 0.5 * (g.sigma_q + g.sigma_p);
    const double d = 0.5 * (g.sigma_q - g.sigma_p);
    const double s = std::hypot(d, g.sigma_pq);
    if (s <= 0.0) return {eta0, 0.0, 0.0};
    const double lmax = h + s;
    const double lmin = h - s;
    return {eta0, 0.25 * std::log(lmax / lmin), std::atan2(-2.0 * g.sigma_pq, g.sigma_p - g.sigma_q)};
}

}  // namespace claqs
