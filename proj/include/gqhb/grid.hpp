// Parameter-sweep grids over the catalog families, written as CSV.
//
// Four sweeps are provided:
//   thermal-grid     H(thermal(nu0) vs thermal(nu1)) at fixed r
//   st-maxsep        H(st(mu,0) vs st(mu,mu-1)) over (mu, r)
//   thermal-vs-epr   H(st(mu,0) vs epr(mu)) over (mu, r); inf cells expected
//   st-correlations  H(st(mu,c0) vs st(mu,c1)) over (c0, c1) at fixed mu, r
// Output is byte-reproducible: cells in row-major axis order, doubles in
// shortest round-trip form, infinities as the literal `inf`, `\n` endings.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "gqhb/catalog.hpp"
#include "gqhb/errors.hpp"
#include "gqhb/hoeffding.hpp"

namespace gqhb {

enum class figure_kind { thermal_grid, st_maxsep, thermal_vs_epr, st_correlations };

inline const char* figure_name(figure_kind f) {
    switch (f) {
        case figure_kind::thermal_grid: return "thermal-grid";
        case figure_kind::st_maxsep: return "st-maxsep";
        case figure_kind::thermal_vs_epr: return "thermal-vs-epr";
        default: return "st-correlations";
    }
}

struct grid_job {
    figure_kind figure = figure_kind::thermal_grid;
    double a_min = 0.0, a_max = 0.0;  // outer (row) axis
    double b_min = 0.0, b_max = 0.0;  // inner (column) axis
    int steps_a = 41, steps_b = 41;
    double r = 0.1;        // fixed false-positive exponent (r-axis figures ignore it)
    double mu = 3.0;       // fixed thermal variance (st-correlations only)
    const char* axis_a = "";
    const char* axis_b = "";
};

// Defaults approximating the plotted parameter ranges. Open endpoints (nu = 1,
// r = 0) are insetted by 1e-3 since those boundary values are excluded.
inline grid_job default_grid_job(figure_kind figure) {
    grid_job job;
    job.figure = figure;
    switch (figure) {
        case figure_kind::thermal_grid:
            job.a_min = 1.0 + 1e-3;
            job.a_max = 3.0;
            job.b_min = 1.0 + 1e-3;
            job.b_max = 3.0;
            job.r = 0.1;
            job.axis_a = "nu0";
            job.axis_b = "nu1";
            break;
        case figure_kind::st_maxsep:
            job.a_min = 1.0;
            job.a_max = 3.0;
            job.b_min = 0.05;
            job.b_max = 1.0;
            job.axis_a = "mu";
            job.axis_b = "r";
            break;
        case figure_kind::thermal_vs_epr:
            job.a_min = 1.0;
            job.a_max = 3.0;
            job.b_min = 1e-3;
            job.b_max = 2.0;
            job.axis_a = "mu";
            job.axis_b = "r";
            break;
        case figure_kind::st_correlations:
            job.mu = 3.0;
            job.a_min = 0.0;
            job.a_max = std::sqrt(job.mu * job.mu - 1.0);
            job.b_min = 0.0;
            job.b_max = job.a_max;
            job.r = 0.1;
            job.axis_a = "c0";
            job.axis_b = "c1";
            break;
    }
    return job;
}

struct grid_cell {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    bool infinite = false;
};

struct grid_result {
    std::array<std::string, 3> header;
    std::vector<grid_cell> cells;  // row-major: outer axis a, inner axis b
};

namespace detail {

inline void validate_grid_job(const grid_job& job) {
    if (job.steps_a < 2 || job.steps_b < 2)
        throw domain_error("grid: each axis needs at least 2 steps");
    if (!(job.a_min <= job.a_max) || !(job.b_min <= job.b_max))
        throw domain_error("grid: axis ranges must be ordered");
    switch (job.figure) {
        case figure_kind::thermal_grid:
            if (job.a_min < 1.0 || job.b_min < 1.0)
                throw domain_error("grid: thermal variances must be >= 1");
            if (!(job.r > 0.0)) throw domain_error("grid: r must be positive");
            break;
        case figure_kind::st_maxsep:
        case figure_kind::thermal_vs_epr:
            if (job.a_min < 1.0) throw domain_error("grid: mu must be >= 1");
            if (!(job.b_min > 0.0)) throw domain_error("grid: r must be positive");
            break;
        case figure_kind::st_correlations:
            if (job.a_min < 0.0 || job.b_min < 0.0)
                throw domain_error("grid: correlations must be >= 0");
            if (job.a_max * job.a_max > job.mu * job.mu - 1.0 + 1e-12 ||
                job.b_max * job.b_max > job.mu * job.mu - 1.0 + 1e-12)
                throw domain_error("grid: correlations must stay within sqrt(mu^2 - 1)");
            if (!(job.r > 0.0)) throw domain_error("grid: r must be positive");
            break;
    }
}

inline double grid_value(double lo, double hi, int steps, int i) {
    return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
}

} // namespace detail

inline grid_result run_grid(const grid_job& job, const optimizer_options& opts = {}) {
    detail::validate_grid_job(job);
    grid_result out;
    out.header = {job.axis_a, job.axis_b, "H"};
    out.cells.reserve(static_cast<std::size_t>(job.steps_a) * job.steps_b);

    for (int i = 0; i < job.steps_a; ++i) {
        const double a = detail::grid_value(job.a_min, job.a_max, job.steps_a, i);
        for (int k = 0; k < job.steps_b; ++k) {
            const double b = detail::grid_value(job.b_min, job.b_max, job.steps_b, k);
            gaussian_state rho0, rho1;
            double r = job.r;
            switch (job.figure) {
                case figure_kind::thermal_grid:
                    rho0 = build(thermal_spec{a});
                    rho1 = build(thermal_spec{b});
                    break;
                case figure_kind::st_maxsep:
                    rho0 = build(squeezed_thermal_spec{a, 0.0});
                    rho1 = build(squeezed_thermal_spec{a, a - 1.0});
                    r = b;
                    break;
                case figure_kind::thermal_vs_epr:
                    rho0 = build(squeezed_thermal_spec{a, 0.0});
                    rho1 = build(epr_spec{a});
                    r = b;
                    break;
                case figure_kind::st_correlations:
                    rho0 = build(squeezed_thermal_spec{job.mu, a});
                    rho1 = build(squeezed_thermal_spec{job.mu, b});
                    break;
            }
            const hoeffding_result res = hoeffding_bound(rho0, rho1, r, opts);
            out.cells.push_back({a, b, res.infinite ? 0.0 : res.value, res.infinite});
        }
    }
    return out;
}

namespace detail {

inline std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

} // namespace detail

inline void write_csv(const grid_result& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw write_error("cannot open output file: " + path);
    out << grid.header[0] << ',' << grid.header[1] << ',' << grid.header[2] << '\n';
    for (const grid_cell& cell : grid.cells) {
        out << detail::format_double(cell.a) << ',' << detail::format_double(cell.b) << ',';
        if (cell.infinite) {
            out << "inf";
        } else {
            out << detail::format_double(cell.h);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw write_error("failed while writing: " + path);
}

} // namespace gqhb
