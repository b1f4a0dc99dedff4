#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace claqs {

/// L_n^k(x) via the upward three-term recurrence
/// (m+1) L_{m+1}^k = (2m+k+1-x) L_m^k - (m+k) L_{m-1}^k.
///
/// For x <= 0 every term is positive and the recurrence is exact up to
/// rounding; for moderate positive x it stays near machine accuracy away
/// from the polynomial's zeros (checked against an extended-precision sum
/// in the test suite).
inline double laguerre_assoc(int n, int k, double x) {
    if (n < 0) throw std::domain_error("laguerre_assoc: degree n must be >= 0");
    if (k < 0) throw std::domain_error("laguerre_assoc: association index k must be >= 0");
    if (!std::isfinite(x)) throw std::domain_error("laguerre_assoc: argument x must be finite");
    double prev = 1.0;  // L_0^k
    if (n == 0) return prev;
    double cur = static_cast<double>(k) + 1.0 - x;  // L_1^k
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + k + 1.0 - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Plain Laguerre polynomial L_n(x) = L_n^0(x); shares the code path of
/// laguerre_assoc so the two agree bit for bit at k = 0.
inline double laguerre(int n, double x) { return laguerre_assoc(n, 0, x); }

/// ln(n!), exact integer factorials through 20!, lgamma beyond.
inline double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: n must be >= 0");
    static const std::array<double, 21> small = [] {
        std::array<double, 21> t{};
        unsigned long long f = 1;
        t[0] = 0.0;
        for (int i = 1; i <= 20; ++i) {
            f *= static_cast<unsigned long long>(i);
            t[static_cast<std::size_t>(i)] = std::log(static_cast<double>(f));
        }
        return t;
    }();
    if (n <= 20) return small[static_cast<std::size_t>(n)];
    return std::lgamma(n + 1.0);
}

/// eta^n L_n(-c/eta) for eta in [0,1) and c >= 0, evaluated without forming
/// either factor.  Recurrence on P_m = eta^m L_m(-c/eta):
///   (m+1) P_{m+1} = ((2m+1) eta + c) P_m - m eta^2 P_{m-1},
/// P_0 = 1, P_1 = eta + c.  At eta = 0 this degenerates to the Poisson
/// kernel c^n / n!, so the eta -> 0 limit needs no special casing.
inline double scaled_laguerre_neg(int n, double eta, double c) {
    if (n < 0) throw std::domain_error("scaled_laguerre_neg: n must be >= 0");
    if (!(eta >= 0.0) || !(c >= 0.0) || !std::isfinite(eta) || !std::isfinite(c))
        throw std::domain_error("scaled_laguerre_neg: eta and c must be finite and >= 0");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = eta + c;
    const double eta2 = eta * eta;
    for (int m = 1; m < n; ++m) {
        const double next = (((2.0 * m + 1.0) * eta + c) * cur - m * eta2 * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace claqs
