// Test-only oracles, kept independent of the implementation paths they
// check.
#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Eigenvalues>

#include <complex>
#include <random>

#include "claqs/fock.hpp"

namespace oracle {

using big_float = boost::multiprecision::cpp_dec_float_100;
using big_int = boost::multiprecision::cpp_int;

inline big_int binomial_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    big_int r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

/// L_n^k(x) by the explicit finite sum sum_j (-1)^j C(n+k, n-j) x^j / j!
/// in 100-digit arithmetic.  Slow and cancellation-proof; the reference
/// for the double-precision recurrence.
inline big_float laguerre_sum(int n, int k, double x) {
    const big_float bx = x;
    big_float sum = 0, xpow = 1, jfact = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            xpow *= bx;
            jfact *= j;
        }
        const big_float term = big_float(binomial_exact(n + k, n - j)) * xpow / jfact;
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

inline double smallest_eigenvalue(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Truncated matrix of the quadrature q = (a + a')/sqrt(2).
inline Eigen::MatrixXcd quadrature_q(int dim) {
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 1; m < dim; ++m) {
        q(m, m - 1) = std::sqrt(m / 2.0);
        q(m - 1, m) = std::sqrt(m / 2.0);
    }
    return q;
}

/// Truncated matrix of p = (a - a')/(i sqrt(2)).
inline Eigen::MatrixXcd quadrature_p(int dim) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> i(0.0, 1.0);
    for (int m = 1; m < dim; ++m) {
        p(m, m - 1) = i * std::sqrt(m / 2.0);
        p(m - 1, m) = -i * std::sqrt(m / 2.0);
    }
    return p;
}

struct Moments {
    double mean_q, mean_p, var_q, var_p, cov_qp;
};

/// First and second quadrature moments read directly off a truncated
/// density matrix.
inline Moments quadrature_moments(const Eigen::MatrixXcd& rho) {
    const int dim = static_cast<int>(rho.rows());
    const Eigen::MatrixXcd q = quadrature_q(dim);
    const Eigen::MatrixXcd p = quadrature_p(dim);
    const double mq = (rho * q).trace().real();
    const double mp = (rho * p).trace().real();
    const double q2 = (rho * q * q).trace().real();
    const double p2 = (rho * p * p).trace().real();
    const double qp = (rho * (q * p + p * q)).trace().real() * 0.5;
    return {mq, mp, q2 - mq * mq, p2 - mp * mp, qp - mq * mp};
}

/// Deterministic draws of valid state parameters for property suites.
inline std::mt19937& rng() {
    static std::mt19937 gen(20240917u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline claqs::StateSpec random_spec(int family) {
    using namespace claqs;
    switch (family % 7) {
        case 0: return FockState{static_cast<int>(uniform(0.0, 12.0))};
        case 1: return CoherentState{{uniform(-1.5, 1.5), uniform(-1.5, 1.5)}};
        case 2: return ThermalState{uniform(0.0, 0.8)};
        case 3: return DisplacedThermalState{uniform(0.0, 0.7), {uniform(-1.2, 1.2), uniform(-1.2, 1.2)}};
        case 4: return SqueezedVacuumState{uniform(0.0, 3.0)};
        case 5: return CoherentPhaseState{{uniform(-0.8, 0.8), uniform(-0.5, 0.5)}};
        default: {
            // random valid covariances: squeeze and rotate a thermal disc
            const double mu = uniform(0.45, 1.0);
            const double nu = 0.5 / mu;
            const double r = uniform(0.0, 0.8);
            const double th = uniform(-3.0, 3.0);
            const double c2 = std::cos(th / 2), s2 = std::sin(th / 2);
            const double l1 = nu * std::exp(-2.0 * r), l2 = nu * std::exp(2.0 * r);
            GaussianParams g;
            g.sigma_q = l1 * c2 * c2 + l2 * s2 * s2;
            g.sigma_p = l1 * s2 * s2 + l2 * c2 * c2;
            g.sigma_pq = (l1 - l2) * c2 * s2;
            g.d_q = uniform(-1.0, 1.0);
            g.d_p = uniform(-1.0, 1.0);
            return GaussianState{g};
        }
    }
}

}  // namespace oracle
