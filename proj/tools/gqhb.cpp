// gqhb: error-exponent bounds for Gaussian-state discrimination.
//
// Subcommands:
//   qhb       Hoeffding bound H(r) plus companion bounds for a state pair
//   overlap   s-overlap C_s and its Minkowski / Young upper bounds
//   grid      parameter-sweep CSV over a catalog family
//   validate  structural and physicality report for a state file
//
// Exit codes: 0 success; 2 parse/validation error; 3 numerical failure;
// 4 unwritable output path; 5 unphysical state (validate only).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gqhb/gqhb.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_numeric = 3;
constexpr int exit_unwritable = 4;
constexpr int exit_unphysical = 5;

nlohmann::ordered_json value_or_inf(double value, bool infinite) {
    if (infinite) return "inf";
    return value;
}

struct options {
    std::string null_path;
    std::string alt_path;
    double r = 0.0;
    double s = 0.0;
    std::string figure;
    std::string out_path;
    int steps = 41;
    std::optional<double> fixed_r;
    std::optional<double> a_min, a_max, b_min, b_max;
    std::string validate_path;
    gqhb::optimizer_options opt;
};

int cmd_qhb(const options& o) {
    const gqhb::gaussian_state rho0 = gqhb::build(gqhb::load_state_spec(o.null_path));
    const gqhb::gaussian_state rho1 = gqhb::build(gqhb::load_state_spec(o.alt_path));
    const gqhb::hoeffding_result res = gqhb::hoeffding_bound(rho0, rho1, o.r, o.opt);
    const gqhb::companion_report comp = gqhb::companion_bounds(rho0, rho1, o.r, o.opt);

    nlohmann::ordered_json j;
    j["H"] = value_or_inf(res.value, res.infinite);
    if (res.s_star) {
        j["s_star"] = *res.s_star;
    } else {
        j["s_star"] = nullptr;
    }
    j["method"] = gqhb::method_name(res.used);
    nlohmann::ordered_json bounds;
    bounds["H_M"] = value_or_inf(comp.h_m, comp.h_m_infinite);
    bounds["H_Y"] = value_or_inf(comp.h_y, comp.h_y_infinite);
    if (comp.h_f) {
        bounds["H_F"] = value_or_inf(*comp.h_f, comp.h_f_infinite);
    } else {
        bounds["H_F"] = nullptr;
    }
    j["bounds"] = bounds;
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_overlap(const options& o) {
    const gqhb::gaussian_state rho0 = gqhb::build(gqhb::load_state_spec(o.null_path));
    const gqhb::gaussian_state rho1 = gqhb::build(gqhb::load_state_spec(o.alt_path));
    const gqhb::overlap_report rep = gqhb::log_overlap(rho0, rho1, o.s);

    nlohmann::ordered_json j;
    j["C_s"] = rep.c_s;
    j["ln_C_s"] = rep.log_c_s;
    j["M_s"] = std::exp(rep.log_m_s);
    j["Y_s"] = std::exp(rep.log_y_s);
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_grid(const options& o) {
    gqhb::figure_kind figure;
    if (o.figure == "thermal-grid") {
        figure = gqhb::figure_kind::thermal_grid;
    } else if (o.figure == "st-maxsep") {
        figure = gqhb::figure_kind::st_maxsep;
    } else if (o.figure == "thermal-vs-epr") {
        figure = gqhb::figure_kind::thermal_vs_epr;
    } else if (o.figure == "st-correlations") {
        figure = gqhb::figure_kind::st_correlations;
    } else {
        throw gqhb::parse_error("unknown figure \"" + o.figure + "\"");
    }

    gqhb::grid_job job = gqhb::default_grid_job(figure);
    job.steps_a = job.steps_b = o.steps;
    if (o.fixed_r) {
        if (figure == gqhb::figure_kind::st_maxsep ||
            figure == gqhb::figure_kind::thermal_vs_epr)
            throw gqhb::parse_error("--r is an axis for figure \"" + o.figure +
                                    "\"; override --b-min/--b-max instead");
        job.r = *o.fixed_r;
    }
    if (o.a_min) job.a_min = *o.a_min;
    if (o.a_max) job.a_max = *o.a_max;
    if (o.b_min) job.b_min = *o.b_min;
    if (o.b_max) job.b_max = *o.b_max;

    const gqhb::grid_result grid = gqhb::run_grid(job, o.opt);
    gqhb::write_csv(grid, o.out_path);
    return exit_ok;
}

int cmd_validate(const options& o) {
    const gqhb::state_spec spec = gqhb::load_state_spec(o.validate_path);
    const gqhb::gaussian_state st = gqhb::moments(spec);
    const gqhb::validity_report rep = gqhb::validate_state(st);

    std::cout << "modes:     " << st.n << '\n';
    std::cout << "symmetric: " << (rep.symmetric ? "yes" : "no") << '\n';
    std::cout << "physical:  " << (rep.physical ? "yes" : "no") << '\n';
    std::cout << "pure:      " << (rep.pure ? "yes" : "no") << '\n';
    std::cout << "symplectic spectrum: [";
    for (std::size_t i = 0; i < rep.spectrum.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << rep.spectrum[i];
    }
    std::cout << "]" << '\n';
    if (!rep.physical) {
        if (rep.symmetric && !rep.spectrum.empty())
            std::cout << "problem: symplectic eigenvalue < 1" << '\n';
        return exit_unphysical;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"error-exponent bounds for discriminating Gaussian states from moments"};
    app.require_subcommand(1);
    options o;

    const auto add_optimizer_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid-points", o.opt.grid_points, "optimizer grid size")
            ->check(CLI::Range(3, 100001));
        cmd->add_option("--eps-s", o.opt.eps_s, "optimizer boundary inset")
            ->check(CLI::Range(1e-15, 1e-2));
        cmd->add_option("--p-cap", o.opt.p_cap, "divergence declaration cap");
    };

    CLI::App* qhb = app.add_subcommand("qhb", "Hoeffding bound for a state pair");
    qhb->add_option("--null", o.null_path, "null-hypothesis state file")->required();
    qhb->add_option("--alt", o.alt_path, "alternative-hypothesis state file")->required();
    qhb->add_option("--r", o.r, "false-positive exponent constraint (> 0)")->required();
    add_optimizer_flags(qhb);

    CLI::App* overlap = app.add_subcommand("overlap", "s-overlap and spectral bounds");
    overlap->add_option("--null", o.null_path, "null-hypothesis state file")->required();
    overlap->add_option("--alt", o.alt_path, "alternative-hypothesis state file")->required();
    overlap->add_option("--s", o.s, "overlap order, strictly inside (0,1)")->required();

    CLI::App* grid = app.add_subcommand("grid", "parameter-sweep CSV");
    grid->add_option("--figure", o.figure,
                     "one of thermal-grid, st-maxsep, thermal-vs-epr, st-correlations")
        ->required();
    grid->add_option("--out", o.out_path, "output CSV path")->required();
    grid->add_option("--steps", o.steps, "steps per axis")->check(CLI::Range(2, 2001));
    double fixed_r_value = 0.0;
    CLI::Option* fixed_r_opt =
        grid->add_option("--r", fixed_r_value, "fixed false-positive exponent");
    double amin = 0, amax = 0, bmin = 0, bmax = 0;
    CLI::Option* amin_opt = grid->add_option("--a-min", amin, "outer axis minimum");
    CLI::Option* amax_opt = grid->add_option("--a-max", amax, "outer axis maximum");
    CLI::Option* bmin_opt = grid->add_option("--b-min", bmin, "inner axis minimum");
    CLI::Option* bmax_opt = grid->add_option("--b-max", bmax, "inner axis maximum");
    add_optimizer_flags(grid);

    CLI::App* validate = app.add_subcommand("validate", "inspect a state file");
    validate->add_option("file", o.validate_path, "state file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_invalid;
    }

    if (fixed_r_opt->count()) o.fixed_r = fixed_r_value;
    if (amin_opt->count()) o.a_min = amin;
    if (amax_opt->count()) o.a_max = amax;
    if (bmin_opt->count()) o.b_min = bmin;
    if (bmax_opt->count()) o.b_max = bmax;

    try {
        if (qhb->parsed()) {
            if (!(o.r > 0.0)) {
                std::cerr << "error: --r must be positive" << '\n';
                return exit_invalid;
            }
            return cmd_qhb(o);
        }
        if (overlap->parsed()) {
            if (!(o.s > 0.0) || !(o.s < 1.0)) {
                std::cerr << "error: --s must lie strictly inside (0,1)" << '\n';
                return exit_invalid;
            }
            return cmd_overlap(o);
        }
        if (grid->parsed()) return cmd_grid(o);
        if (validate->parsed()) return cmd_validate(o);
    } catch (const gqhb::write_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unwritable;
    } catch (const gqhb::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const gqhb::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_invalid;
}
