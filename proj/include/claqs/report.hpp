#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "measures.hpp"

namespace claqs {

/// "%.12g" rendering used for every CSV number, so figure files are
/// byte-stable across runs.
inline std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// JSON records
// ---------------------------------------------------------------------------

inline nlohmann::json state_to_json(const StateSpec& spec) {
    using nlohmann::json;
    return std::visit(
        [](const auto& s) -> json {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FockState>) return json{{"family", "fock"}, {"n", s.n}};
            if constexpr (std::is_same_v<S, CoherentState>)
                return json{{"family", "coherent"}, {"alpha_re", s.alpha.real()}, {"alpha_im", s.alpha.imag()}};
            if constexpr (std::is_same_v<S, ThermalState>)
                return json{{"family", "thermal"}, {"eta", s.eta}, {"nbar", thermal_nbar_from_eta(s.eta)}};
            if constexpr (std::is_same_v<S, DisplacedThermalState>)
                return json{{"family", "displaced_thermal"},
                            {"eta", s.eta},
                            {"alpha_re", s.alpha.real()},
                            {"alpha_im", s.alpha.imag()}};
            if constexpr (std::is_same_v<S, SqueezedVacuumState>) return json{{"family", "sqv"}, {"nbar", s.nbar}};
            if constexpr (std::is_same_v<S, CoherentPhaseState>)
                return json{{"family", "phase"},
                            {"eps_re", s.eps.real()},
                            {"eps_im", s.eps.imag()},
                            {"nbar", thermal_nbar_from_eta(std::norm(s.eps))}};
            if constexpr (std::is_same_v<S, GaussianState>)
                return json{{"family", "gaussian"},   {"sigma_q", s.params.sigma_q}, {"sigma_p", s.params.sigma_p},
                            {"sigma_pq", s.params.sigma_pq}, {"d_q", s.params.d_q},  {"d_p", s.params.d_p}};
        },
        spec);
}

/// One measure evaluation as reported by the CLI.  Numeric-path records
/// always carry the truncation dimension and tail bound; closed-form
/// records carry method = closed_form and no truncation fields.
struct OutputRecord {
    StateSpec state;
    std::string measure;
    MeasureResult result;
    std::optional<int> dim;
    std::optional<double> tail_bound;
};

inline nlohmann::json to_json(const OutputRecord& rec) {
    nlohmann::json j;
    j["state"] = state_to_json(rec.state);
    j["measure"] = rec.measure;
    j["value"] = rec.result.value;
    if (rec.result.argmax_eta) j["argmax_eta"] = *rec.result.argmax_eta;
    if (rec.result.argmax_alpha_sq) j["argmax_alpha_sq"] = *rec.result.argmax_alpha_sq;
    if (rec.result.argmax_n) j["argmax_n"] = *rec.result.argmax_n;
    j["method"] = to_string(rec.result.method);
    j["achieved_tol"] = rec.result.achieved_tol;
    if (rec.result.eta_at_cap) j["eta_at_cap"] = true;
    if (rec.dim) j["dim"] = *rec.dim;
    if (rec.tail_bound) j["tail_bound"] = *rec.tail_bound;
    return j;
}

inline std::string record_csv_header() {
    return "measure,family,value,argmax_eta,argmax_alpha_sq,argmax_n,method,achieved_tol,dim,tail_bound";
}

inline std::string record_csv_row(const OutputRecord& rec) {
    auto opt = [](const std::optional<double>& v) { return v ? format_g12(*v) : std::string{}; };
    const nlohmann::json st = state_to_json(rec.state);
    std::string row = rec.measure;
    row += "," + st["family"].get<std::string>();
    row += "," + format_g12(rec.result.value);
    row += "," + opt(rec.result.argmax_eta);
    row += "," + opt(rec.result.argmax_alpha_sq);
    row += "," + (rec.result.argmax_n ? std::to_string(*rec.result.argmax_n) : std::string{});
    row += "," + std::string(to_string(rec.result.method));
    row += "," + format_g12(rec.result.achieved_tol);
    row += "," + (rec.dim ? std::to_string(*rec.dim) : std::string{});
    row += "," + (rec.tail_bound ? format_g12(*rec.tail_bound) : std::string{});
    return row;
}

// ---------------------------------------------------------------------------
// figure data
// ---------------------------------------------------------------------------

/// Fidelity surface of |3> against displaced thermal states on an
/// (eta, |alpha|^2) grid.
inline void write_fig1_csv(std::ostream& os, double eta_max = 0.99, double r_max = 8.0, int samples = 100) {
    if (samples < 2) throw std::invalid_argument("write_fig1_csv: samples must be >= 2");
    os << "eta,alpha_sq,f3\n";
    for (int i = 0; i < samples; ++i) {
        const double eta = eta_max * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            const double r = r_max * j / (samples - 1);
            os << format_g12(eta) << ',' << format_g12(r) << ',' << format_g12(fidelity_fn(3, eta, r)) << '\n';
        }
    }
}

/// Vacuum-excluded anticlassicality of coherent states versus nbar.
inline void write_fig2_csv(std::ostream& os, double nbar_max = 8.0, int samples = 161) {
    if (samples < 2) throw std::invalid_argument("write_fig2_csv: samples must be >= 2");
    os << "nbar,A1_coherent\n";
    for (int i = 0; i < samples; ++i) {
        const double nb = nbar_max * i / (samples - 1);
        os << format_g12(nb) << ',' << format_g12(anticlassicality_closed(Family::coherent, nb, AnticlassVariant::A1))
           << '\n';
    }
}

/// A1 of squeezed vacuum and coherent phase states next to the
/// purity-weighted Atilde1 of thermal states.
inline void write_fig3_csv(std::ostream& os, double nbar_max = 10.0, int samples = 201) {
    if (samples < 2) throw std::invalid_argument("write_fig3_csv: samples must be >= 2");
    os << "nbar,A1_sqv,A1_phase,Atilde1_thermal\n";
    for (int i = 0; i < samples; ++i) {
        const double nb = nbar_max * i / (samples - 1);
        os << format_g12(nb) << ','
           << format_g12(anticlassicality_closed(Family::squeezed_vacuum, nb, AnticlassVariant::A1)) << ','
           << format_g12(anticlassicality_closed(Family::phase, nb, AnticlassVariant::A1)) << ','
           << format_g12(anticlassicality_closed(Family::thermal, nb, AnticlassVariant::Atilde1)) << '\n';
    }
}

// ---------------------------------------------------------------------------
// golden report
// ---------------------------------------------------------------------------

struct GoldenRow {
    std::string name;
    double reference;  // frozen literature / hand-derived value
    double computed;
    double abs_diff;
    double tol;
    bool pass;
};

namespace detail {

inline GoldenRow golden_row(std::string name, double reference, double computed, double tol = 1e-10) {
    const double diff = std::abs(reference - computed);
    return {std::move(name), reference, computed, diff, tol, diff <= tol};
}

}  // namespace detail

/// Closed-form evaluation of every frozen reference value, with |diff|
/// against the stored constants.
inline std::vector<GoldenRow> golden_report() {
    using detail::golden_row;
    std::vector<GoldenRow> rows;

    rows.push_back(golden_row("C_eta_fock_1", 0.5, classicality_fock(1).value));
    rows.push_back(golden_row("C_alpha_fock_1", 0.36787944117144233, reduced_classicality_alpha_fock(1).value));

    const double eta_n_ref[6] = {0.70710678118654752, 0.81649658092772603, 0.86602540378443865,
                                 0.89442719099991588, 0.91287092917527686, 0.92582009977255146};
    const double c_fock_ref[6] = {0.5,                 0.38490017945975051, 0.32475952641916449,
                                  0.28621670111997308, 0.25880416406247566, 0.23801844364429470};
    for (int n = 1; n <= 6; ++n) {
        const MeasureResult r = classicality_fock(n);
        rows.push_back(golden_row("eta_star_fock_" + std::to_string(n), eta_n_ref[n - 1], *r.argmax_eta));
        rows.push_back(golden_row("C_fock_" + std::to_string(n), c_fock_ref[n - 1], r.value));
    }

    for (const double eta : {1.0 / 3.0, 0.5, 0.8})
        rows.push_back(golden_row("thermal_purity_eta_" + format_g12(eta), (1.0 - eta) / (1.0 + eta),
                                  thermal_purity_closed(eta)));

    rows.push_back(golden_row("C_coherent", 1.0, classicality_closed(StateSpec{CoherentState{{1.5, 0.0}}}).value));
    rows.push_back(golden_row("C_thermal", 1.0, classicality_closed(StateSpec{ThermalState{0.4}}).value));

    for (const double mu : {0.2, 0.5, 0.9, 1.0}) {
        for (const double muT : {1.0, 1.5, 3.0, 10.0}) {
            const double T = muT / mu;
            const double nu = 0.5 / mu;
            const double sq = 0.5 * (T - std::sqrt(T * T - 4.0 * nu * nu));
            const GaussianParams g{sq, T - sq, 0.0, 0.0, 0.0};
            const MeasureResult r = gaussian_classicality(g);
            const std::string tag = "_mu_" + format_g12(mu) + "_muT_" + format_g12(muT);
            rows.push_back(golden_row("C_gaussian" + tag, std::sqrt(2.0 / (1.0 + muT)), r.value));
            rows.push_back(golden_row("eta_star_gaussian" + tag, (1.0 - mu) / (1.0 + mu), *r.argmax_eta));
        }
    }

    for (const double nb : {0.5, 1.0, 2.0}) {
        const double eps = std::sqrt(nb / (1.0 + nb));
        rows.push_back(golden_row("C_eta_phase_nbar_" + format_g12(nb), 1.0 / std::sqrt(1.0 + 2.0 * nb),
                                  classicality_closed(StateSpec{CoherentPhaseState{{eps, 0.0}}}).value));
    }

    const MeasureResult a1sqv = anticlassicality(StateSpec{SqueezedVacuumState{2.0}}, false, false);
    rows.push_back(golden_row("A1_sqv_max", 0.19245008972987526, a1sqv.value));
    rows.push_back(golden_row("A1_sqv_max_argmax_n", 2.0, static_cast<double>(*a1sqv.argmax_n)));
    const MeasureResult a1ph =
        anticlassicality(StateSpec{CoherentPhaseState{{std::sqrt(0.5), 0.0}}}, false, false);
    rows.push_back(golden_row("A1_phase_max", 0.25, a1ph.value));
    rows.push_back(golden_row("A1_phase_max_argmax_n", 1.0, static_cast<double>(*a1ph.argmax_n)));

    const double atilde_ref[3] = {1.0 / 3.0, 1.0 / 6.0, 1.0 / 15.0};
    const double atilde1_ref[3] = {1.0 / 9.0, 1.0 / 12.0, 2.0 / 45.0};
    const double nbs[3] = {0.5, 1.0, 2.0};
    for (int i = 0; i < 3; ++i) {
        rows.push_back(golden_row("Atilde_thermal_nbar_" + format_g12(nbs[i]), atilde_ref[i],
                                  anticlassicality_closed(Family::thermal, nbs[i], AnticlassVariant::Atilde)));
        rows.push_back(golden_row("Atilde1_thermal_nbar_" + format_g12(nbs[i]), atilde1_ref[i],
                                  anticlassicality_closed(Family::thermal, nbs[i], AnticlassVariant::Atilde1)));
    }

    // global peak of f_3 against its eta = 0 edge maximum
    const double global3 = classicality_fock(3).value;
    const double edge3 = reduced_classicality_alpha_fock(3).value;
    rows.push_back(golden_row("fock3_global_minus_edge", 0.10071771876377675, global3 - edge3));

    return rows;
}

inline nlohmann::json to_json(const std::vector<GoldenRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"name", r.name},
                       {"reference", r.reference},
                       {"computed", r.computed},
                       {"abs_diff", r.abs_diff},
                       {"tol", r.tol},
                       {"pass", r.pass}});
    return arr;
}

}  // namespace claqs
