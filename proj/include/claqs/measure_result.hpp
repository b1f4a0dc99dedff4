#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace claqs {

enum class Method { closed_form, numeric_grid, hybrid };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::numeric_grid: return "numeric_grid";
        case Method::hybrid: return "hybrid";
    }
    throw std::logic_error("to_string(Method): unknown value");
}

/// Value of a (anti)classicality measure together with the maximizing
/// reference-state parameters.  Only the argmax fields relevant to the
/// measure are populated.  `eta_at_cap` flags a numeric search whose
/// maximum sits at the eta truncation cap, where the reported value is a
/// lower bound rather than an attained maximum.
struct MeasureResult {
    double value = 0.0;
    std::optional<double> argmax_eta;
    std::optional<double> argmax_alpha_sq;
    std::optional<int> argmax_n;
    Method method = Method::closed_form;
    double achieved_tol = 0.0;
    bool eta_at_cap = false;
};

}  // namespace claqs
