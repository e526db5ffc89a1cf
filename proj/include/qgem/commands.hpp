#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qgem/config.hpp"
#include "qgem/design_solvers.hpp"
#include "qgem/entanglement.hpp"
#include "qgem/report.hpp"
#include "qgem/trapping.hpp"

// Command implementations behind the CLI subcommands. These only marshal
// between configuration, the core modules, and report tables; every emitted
// number comes out of a module operation. Infeasible design points are
// emitted with dx = inf and a zero feasibility flag, never dropped.

namespace qgem {

/// Superposition widths against mass and sphere-plate distance at the
/// configured target entanglement rate. Both the width and the full split
/// 2 dx are reported.
inline ReportTable run_table1(const RunConfig& config) {
    ReportTable table({{"mass", "kg"},
                       {"z", "m"},
                       {"d", "m"},
                       {"rate", "Hz"},
                       {"dx_min", "m"},
                       {"full_split", "m"},
                       {"feasible", "-"}});
    for (double mass : config.table1.masses_kg) {
        for (double z : config.table1.plate_distances_m) {
            const auto geom = ExperimentGeometry::shielded(Configuration::parallel, 0.0, z,
                                                           config.table1.plate_thickness_m);
            const auto result = dx_for_rate(mass, geom.d, config.table1.rate_hz);
            const double dx =
                result.feasible ? result.dx_min : std::numeric_limits<double>::infinity();
            table.add_row({mass, z, geom.d, config.table1.rate_hz, dx, 2.0 * dx,
                           result.feasible ? 1.0 : 0.0});
        }
    }
    return table;
}

/// Minimal field magnitude and z-gradient, swept over z at fixed mass or over
/// mass at fixed z, for the configured EM term selection and dipole model.
inline ReportTable run_field_requirements(const RunConfig& config) {
    const bool sweep_mass = config.fields.mass_grid_kg.has_value();
    ReportTable table({{sweep_mass ? "mass" : "z", sweep_mass ? "kg" : "m"},
                       {"b_min", "T"},
                       {"dbdz_min", "T/m"}});
    if (sweep_mass) {
        for (double mass : *config.fields.mass_grid_kg) {
            const auto req = field_requirement(config.test_mass(mass), config.fields.z_m,
                                               config.terms, config.validity());
            table.add_row({mass, req.b_min, req.dbdz_min});
        }
    } else {
        const std::vector<double> z_grid =
            config.fields.z_grid_m.value_or(std::vector<double>{config.fields.z_m});
        const TestMass tm = config.test_mass(config.fields.mass_kg);
        for (double z : z_grid) {
            const auto req = field_requirement(tm, z, config.terms, config.validity());
            table.add_row({z, req.b_min, req.dbdz_min});
        }
    }
    return table;
}

/// Width at zero witness expectation as a function of the decoherence rate,
/// one row per (mass, gamma).
inline ReportTable run_dx_vs_gamma(const RunConfig& config) {
    ReportTable table(
        {{"mass", "kg"}, {"gamma", "Hz"}, {"dx_min", "m"}, {"feasible", "-"}});
    for (double mass : config.dx_vs_gamma.masses_kg) {
        for (double gamma : config.dx_vs_gamma.gamma_hz) {
            const auto result = dx_for_witness(mass, config.dx_vs_gamma.d_m, gamma,
                                               config.dx_vs_gamma.tau_s,
                                               config.dx_vs_gamma.witness_target);
            const double dx =
                result.feasible ? result.dx_min : std::numeric_limits<double>::infinity();
            table.add_row({mass, gamma, dx, result.feasible ? 1.0 : 0.0});
        }
    }
    return table;
}

/// Trapping potential over the (x, z) window at y = 0. Grid coordinates are
/// centered integer multiples of the step so the x -> -x pairs are exact.
inline ReportTable run_trap_surface(const RunConfig& config) {
    const TrapProfile profile = config.trap_profile();
    const TestMass tm = config.test_mass(config.trap_surface.mass_kg);
    const int nx = config.trap_surface.nx;
    const int nz = config.trap_surface.nz;
    const double step_x =
        nx > 1 ? 2.0 * config.trap_surface.x_half_width_m / (nx - 1) : 0.0;
    const double step_z =
        nz > 1 ? 2.0 * config.trap_surface.z_half_width_m / (nz - 1) : 0.0;

    ReportTable table({{"x", "m"}, {"z", "m"}, {"v_t", "J"}});
    for (int i = 0; i < nx; ++i) {
        const double x = (i - (nx - 1) / 2.0) * step_x;
        for (int k = 0; k < nz; ++k) {
            const double z = (k - (nz - 1) / 2.0) * step_z;
            table.add_row({x, z, trap_potential_at(profile, tm, x, 0.0, z)});
        }
    }
    return table;
}

struct CheckOutcome {
    DominanceReport report;
    std::string text;
    int exit_code = 0;
};

/// Dominance check at a single trap point; nonzero exit code when either
/// condition fails.
inline CheckOutcome run_check(const RunConfig& config) {
    const TestMass tm = config.test_mass(config.check.mass_kg);
    const auto report = check_dominance(tm, config.check.z_m, config.check.b_t,
                                        config.check.dbdz_t_per_m, config.terms,
                                        config.validity());
    CheckOutcome out;
    out.report = report;
    out.exit_code = report.pass() ? 0 : 1;
    out.text = "dominance check at z = " + format_value(config.check.z_m) +
               " m, B = " + format_value(config.check.b_t) +
               " T, dB/dz = " + format_value(config.check.dbdz_t_per_m) + " T/m\n";
    out.text += "  potential margin |V_T|/|V_EM| = " + format_value(report.potential_margin) +
                (report.potential_ok ? "  PASS" : "  FAIL") + "\n";
    out.text += "  force margin     |F_T|/|F_EM| = " + format_value(report.force_margin) +
                (report.force_ok ? "  PASS" : "  FAIL") + "\n";
    out.text += report.pass() ? "PASS\n" : "FAIL\n";
    return out;
}

/// Render a table in the configured output format.
inline std::string render(const ReportTable& table, const OutputConfig& output) {
    return output.format == OutputConfig::Format::csv ? table.to_csv() : table.to_json();
}

} // namespace qgem
