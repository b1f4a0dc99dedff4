// claqs: classicality and anticlassicality measures of single-mode bosonic
// states.  Subcommands: classicality | anticlassicality | figure |
// golden-report.  Exit codes: 0 success, 1 validation error, 2
// tolerance/golden failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "claqs/claqs.hpp"

namespace {

using namespace claqs;

struct StateArgs {
    CLI::App* fock = nullptr;
    CLI::App* coherent = nullptr;
    CLI::App* thermal = nullptr;
    CLI::App* sqv = nullptr;
    CLI::App* phase = nullptr;
    CLI::App* gaussian = nullptr;

    int fock_n = 0;
    std::vector<double> alpha;
    double thermal_nbar = -1.0;
    double thermal_eta = -1.0;
    double sqv_nbar = 0.0;
    double phase_nbar = -1.0;
    std::vector<double> phase_eps;
    double sq = 0.5, sp = 0.5, spq = 0.0, dq = 0.0, dp = 0.0;

    void attach(CLI::App* parent) {
        // options that trail the family subcommand belong to the parent
        fock = parent->add_subcommand("fock", "Fock state |n>")->fallthrough();
        fock->add_option("n", fock_n, "photon number")->required();
        coherent = parent->add_subcommand("coherent", "coherent state |alpha>")->fallthrough();
        coherent->add_option("alpha", alpha, "Re(alpha) [Im(alpha)]")->required()->expected(1, 2);
        thermal = parent->add_subcommand("thermal", "thermal state")->fallthrough();
        auto* tn = thermal->add_option("--nbar", thermal_nbar, "mean quanta");
        auto* te = thermal->add_option("--eta", thermal_eta, "Boltzmann ratio in [0,1)");
        tn->excludes(te);
        te->excludes(tn);
        sqv = parent->add_subcommand("sqv", "squeezed vacuum state")->fallthrough();
        sqv->add_option("--nbar", sqv_nbar, "mean quanta")->required();
        phase = parent->add_subcommand("phase", "coherent phase state")->fallthrough();
        auto* pn = phase->add_option("--nbar", phase_nbar, "mean quanta");
        auto* pe = phase->add_option("--eps", phase_eps, "Re(eps) [Im(eps)], |eps| < 1")->expected(1, 2);
        pn->excludes(pe);
        pe->excludes(pn);
        gaussian = parent->add_subcommand("gaussian", "Gaussian state (vacuum variance 1/2)")->fallthrough();
        gaussian->add_option("--sq", sq, "sigma_q")->required();
        gaussian->add_option("--sp", sp, "sigma_p")->required();
        gaussian->add_option("--spq", spq, "sigma_pq");
        gaussian->add_option("--dq", dq, "d_q");
        gaussian->add_option("--dp", dp, "d_p");
        parent->require_subcommand(1);
    }

    StateSpec to_spec() const {
        if (fock->parsed()) return FockState{fock_n};
        if (coherent->parsed()) return CoherentState{{alpha[0], alpha.size() > 1 ? alpha[1] : 0.0}};
        if (thermal->parsed()) {
            if (thermal_nbar >= 0.0) return ThermalState{thermal_eta_from_nbar(thermal_nbar)};
            if (thermal_eta >= 0.0) return ThermalState{thermal_eta};
            throw std::domain_error("thermal: provide --nbar or --eta");
        }
        if (sqv->parsed()) return SqueezedVacuumState{sqv_nbar};
        if (phase->parsed()) {
            if (phase_nbar >= 0.0) return CoherentPhaseState{{std::sqrt(thermal_eta_from_nbar(phase_nbar)), 0.0}};
            if (!phase_eps.empty())
                return CoherentPhaseState{{phase_eps[0], phase_eps.size() > 1 ? phase_eps[1] : 0.0}};
            throw std::domain_error("phase: provide --nbar or --eps");
        }
        if (gaussian->parsed()) return GaussianState{{sq, sp, spq, dq, dp}};
        throw std::domain_error("no state family selected");
    }
};

struct CommonOpts {
    std::string method = "closed";
    int dim = 0;  // 0 = policy default
    int grid = 64;
    double tol = 1e-8;
    std::string out;
    std::string format = "json";

    void attach(CLI::App* cmd, bool with_method = true) {
        if (with_method)
            cmd->add_option("--method", method, "evaluation path")->check(CLI::IsMember({"closed", "numeric", "both"}));
        cmd->add_option("--dim", dim, "Fock truncation dimension (default: policy)");
        cmd->add_option("--grid", grid, "grid points per search axis");
        cmd->add_option("--tol", tol, "refinement tolerance in parameter space");
        cmd->add_option("--out", out, "output path (default: stdout)");
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    }

    OptimConfig optim() const {
        OptimConfig cfg;
        cfg.grid_points_per_axis = grid;
        cfg.refine_tol = tol;
        return cfg;
    }
};

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(opts.out, std::ios::binary);
    if (!os) throw std::domain_error("cannot open output path: " + opts.out);
    os << text;
}

std::string render_records(const CommonOpts& opts, const std::vector<OutputRecord>& recs) {
    if (opts.format == "csv") {
        std::string text = record_csv_header() + "\n";
        for (const auto& r : recs) text += record_csv_row(r) + "\n";
        return text;
    }
    if (recs.size() == 1) return to_json(recs[0]).dump(2) + "\n";
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const auto& r : recs) j["records"].push_back(to_json(r));
    j["abs_diff"] = std::abs(recs[0].result.value - recs[1].result.value);
    return j.dump(2) + "\n";
}

int run_classicality(const StateArgs& state, const CommonOpts& opts) {
    const StateSpec spec = state.to_spec();
    std::vector<OutputRecord> recs;
    if (opts.method == "closed" || opts.method == "both")
        recs.push_back({spec, "classicality", classicality_closed(spec), {}, {}});
    if (opts.method == "numeric" || opts.method == "both") {
        const int dim = opts.dim > 0 ? opts.dim : choose_dim(spec, 1e-7);
        const NumericClassicality run = classicality_numeric_run(spec, dim, opts.optim());
        recs.push_back({spec, "classicality", run.result, run.dim, run.tail_bound});
    }
    emit(opts, render_records(opts, recs));
    return 0;
}

int run_anticlassicality(const StateArgs& state, const CommonOpts& opts, const std::string& variant) {
    const StateSpec spec = state.to_spec();
    const bool include_vacuum = variant == "A" || variant == "Atilde";
    const bool weighted = variant == "Atilde" || variant == "Atilde1";
    std::vector<OutputRecord> recs;
    if (opts.method == "closed" || opts.method == "both")
        recs.push_back({spec, "anticlassicality_" + variant, anticlassicality(spec, include_vacuum, weighted), {}, {}});
    if (opts.method == "numeric" || opts.method == "both") {
        const int dim = opts.dim > 0 ? opts.dim : choose_dim(spec, 1e-7);
        const FockDensity rho = build_state(spec, dim);
        recs.push_back(
            {spec, "anticlassicality_" + variant, anticlassicality(rho, include_vacuum, weighted), dim, rho.tail_bound});
    }
    emit(opts, render_records(opts, recs));
    return 0;
}

int run_figure(const std::string& name, const CommonOpts& opts, int samples) {
    std::ostringstream os;
    if (name == "fig1")
        write_fig1_csv(os, 0.99, 8.0, samples > 0 ? samples : 100);
    else if (name == "fig2")
        write_fig2_csv(os, 8.0, samples > 0 ? samples : 161);
    else if (name == "fig3")
        write_fig3_csv(os, 10.0, samples > 0 ? samples : 201);
    else
        throw std::domain_error("figure: unknown name " + name + " (expected fig1|fig2|fig3)");
    emit(opts, os.str());
    return 0;
}

int run_golden_report(const CommonOpts& opts) {
    const std::vector<GoldenRow> rows = golden_report();
    emit(opts, to_json(rows).dump(2) + "\n");
    for (const auto& r : rows)
        if (!r.pass) {
            std::cerr << "golden value out of tolerance: " << r.name << " |diff|=" << r.abs_diff << " tol=" << r.tol
                      << "\n";
            return 2;
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classicality and anticlassicality measures of single-mode bosonic states"};
    app.require_subcommand(1);

    auto* cls = app.add_subcommand("classicality", "maximum renormalized HS overlap with displaced thermal states");
    StateArgs cls_state;
    CommonOpts cls_opts;
    cls_state.attach(cls);
    cls_opts.attach(cls);

    auto* anti = app.add_subcommand("anticlassicality", "maximum Fock-state occupation");
    StateArgs anti_state;
    CommonOpts anti_opts;
    std::string variant = "A";
    anti_state.attach(anti);
    anti_opts.attach(anti);
    anti->add_option("--variant", variant, "A | A1 | Atilde | Atilde1")
        ->check(CLI::IsMember({"A", "A1", "Atilde", "Atilde1"}));

    auto* fig = app.add_subcommand("figure", "emit figure data as CSV");
    std::string fig_name;
    int fig_samples = 0;
    CommonOpts fig_opts;
    fig->add_option("name", fig_name, "fig1 | fig2 | fig3")->required();
    fig->add_option("--samples", fig_samples, "samples per axis");
    fig_opts.attach(fig, /*with_method=*/false);

    auto* golden = app.add_subcommand("golden-report", "closed-form reference table; exit 2 on any mismatch");
    CommonOpts golden_opts;
    golden_opts.attach(golden, /*with_method=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cls->parsed()) return run_classicality(cls_state, cls_opts);
        if (anti->parsed()) return run_anticlassicality(anti_state, anti_opts, variant);
        if (fig->parsed()) return run_figure(fig_name, fig_opts, fig_samples);
        if (golden->parsed()) return run_golden_report(golden_opts);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
