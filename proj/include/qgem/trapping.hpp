#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgem/constants.hpp"
#include "qgem/em_interactions.hpp"
#include "qgem/vec3.hpp"

// Diamagnetic trapping against plate attraction: the trap potential, the
// minimal field magnitude / z-gradient that keep the sphere off the plate,
// the dominance check, and the published trap field profile with its
// analytic gradient.

namespace qgem {

/// Coefficients of the trap field multipole profile. y0 is the distance from
/// the trap bottom to the magnets; it has no shipped default and must come
/// from configuration.
struct TrapProfile {
    double a2 = 0.0; // [T]
    double a3 = 0.0; // [T]
    double a4 = 0.0; // [T]
    double y0 = 0.0; // [m]

    /// Published coefficient set (a2 = -1.3 T, a3 = 0.0183 T, a4 = 0.72 T).
    static TrapProfile preset(double y0) {
        TrapProfile p{-1.3, 0.0183, 0.72, y0};
        p.validate();
        return p;
    }

    void validate() const {
        if (!(y0 > 0.0)) {
            throw std::invalid_argument("TrapProfile: y0 must be positive");
        }
    }
};

/// Diamagnetic trapping potential [J], chi_rho m B^2 / (2 mu0). Negative for
/// diamagnetic materials; dominance comparisons use magnitudes.
inline double trap_potential(const TestMass& tm, double b_field) {
    return tm.chi_rho * tm.mass * b_field * b_field / (2.0 * constants::mu0);
}

/// Minimal trap field magnitude [T] such that |V_T| exceeds the selected
/// plate-facing potentials at distance z:
/// |B| > sqrt(2 mu0 (|V_DD| + |V_CP|) / (|chi_rho| m)).
inline double min_field_magnitude(const TestMass& tm, double z, const EmTermSelection& terms,
                                  Validity mode = Validity::lenient) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("min_field_magnitude: z must be positive");
    }
    const double v_em = em_plate_potential(tm, z, terms, mode);
    return std::sqrt(2.0 * constants::mu0 * v_em / (std::abs(tm.chi_rho) * tm.mass));
}

/// Minimal trap field z-gradient [T/m] at field magnitude b:
/// |dB/dz| > mu0 (|F_DD| + |F_CP|) / (|chi_rho| m |B|).
/// Uses the worst-case alignment B . dB/dz = |B||dB/dz|.
inline double min_field_gradient(const TestMass& tm, double z, double b_field,
                                 const EmTermSelection& terms, Validity mode = Validity::lenient) {
    if (!(b_field > 0.0)) {
        throw std::invalid_argument("min_field_gradient: field magnitude must be positive");
    }
    if (!(z > 0.0)) {
        throw std::invalid_argument("min_field_gradient: z must be positive");
    }
    const double f_em = em_plate_force(tm, z, terms, mode);
    return constants::mu0 * f_em / (std::abs(tm.chi_rho) * tm.mass * b_field);
}

/// Field requirements at a given sphere-plate distance. The gradient bound is
/// evaluated at the threshold field magnitude.
struct FieldRequirement {
    double b_min = 0.0;    // [T]
    double dbdz_min = 0.0; // [T/m]
    double z = 0.0;        // [m]
    double mass = 0.0;     // [kg]
    EmTermSelection terms;
};

inline FieldRequirement field_requirement(const TestMass& tm, double z,
                                          const EmTermSelection& terms,
                                          Validity mode = Validity::lenient) {
    FieldRequirement req;
    req.b_min = min_field_magnitude(tm, z, terms, mode);
    req.dbdz_min = min_field_gradient(tm, z, req.b_min, terms, mode);
    req.z = z;
    req.mass = tm.mass;
    req.terms = terms;
    return req;
}

/**
 * Trap magnetic field at (x, y, z) [T].
 *
 * B_x = -[2 a3 sqrt(14/3pi) x z / y0^2]
 * B_y = -[3 a4 sqrt(35/pi) z (z^2 - 3 y^2)/(16 y0^3)
 *         - a3 sqrt(7/6pi) z y / y0^2 + a2 sqrt(15/pi) z/(4 y0)]
 * B_z = -[3 a4 sqrt(35/pi) y (3 z^2 - y^2)/(16 y0^3)
 *         + a3 sqrt(7/6pi) (4 x^2 - y^2 - 3 z^2)/(2 y0^2) + a2 sqrt(15/pi) y/(4 y0)]
 *
 * Every term carries a coordinate factor, so B(0,0,0) = 0 exactly. The field
 * is curl-free (the a3 cross terms satisfy dBx/dz = dBz/dx).
 */
inline Vec3 trap_field(const TrapProfile& p, double x, double y, double z) {
    p.validate();
    const double pi = std::numbers::pi;
    const double k3 = std::sqrt(14.0 / (3.0 * pi));
    const double k4 = std::sqrt(35.0 / pi);
    const double k7 = std::sqrt(7.0 / (6.0 * pi));
    const double k2 = std::sqrt(15.0 / pi);
    const double y02 = p.y0 * p.y0;
    const double y03 = y02 * p.y0;

    const double bx = -(2.0 * p.a3 * k3 * x * z / y02);
    const double by = -(3.0 * p.a4 * k4 * z * (z * z - 3.0 * y * y) / (16.0 * y03) -
                        p.a3 * k7 * z * y / y02 + p.a2 * k2 * z / (4.0 * p.y0));
    const double bz = -(3.0 * p.a4 * k4 * y * (3.0 * z * z - y * y) / (16.0 * y03) +
                        p.a3 * k7 * (4.0 * x * x - y * y - 3.0 * z * z) / (2.0 * y02) +
                        p.a2 * k2 * y / (4.0 * p.y0));
    return {bx, by, bz};
}

namespace detail {

/// Rows are the gradients of the field components: jac[i] = grad(B_i).
struct TrapFieldJacobian {
    Vec3 grad_bx;
    Vec3 grad_by;
    Vec3 grad_bz;
};

inline TrapFieldJacobian trap_field_jacobian(const TrapProfile& p, double x, double y, double z) {
    const double pi = std::numbers::pi;
    const double k3 = std::sqrt(14.0 / (3.0 * pi));
    const double k4 = std::sqrt(35.0 / pi);
    const double k7 = std::sqrt(7.0 / (6.0 * pi));
    const double k2 = std::sqrt(15.0 / pi);
    const double y02 = p.y0 * p.y0;
    const double y03 = y02 * p.y0;

    TrapFieldJacobian j;
    j.grad_bx = {-2.0 * p.a3 * k3 * z / y02, 0.0, -2.0 * p.a3 * k3 * x / y02};
    j.grad_by = {0.0,
                 -(-18.0 * p.a4 * k4 * z * y / (16.0 * y03) - p.a3 * k7 * z / y02),
                 -(3.0 * p.a4 * k4 * (3.0 * z * z - 3.0 * y * y) / (16.0 * y03) -
                   p.a3 * k7 * y / y02 + p.a2 * k2 / (4.0 * p.y0))};
    j.grad_bz = {-(4.0 * p.a3 * k7 * x / y02),
                 -(3.0 * p.a4 * k4 * (3.0 * z * z - 3.0 * y * y) / (16.0 * y03) -
                   p.a3 * k7 * y / y02 + p.a2 * k2 / (4.0 * p.y0)),
                 -(18.0 * p.a4 * k4 * y * z / (16.0 * y03) - 3.0 * p.a3 * k7 * z / y02)};
    return j;
}

} // namespace detail

/// Trapping potential of the profile field at a point [J].
inline double trap_potential_at(const TrapProfile& p, const TestMass& tm, double x, double y,
                                double z) {
    return trap_potential(tm, trap_field(p, x, y, z).norm());
}

/// Trap force [N]: analytic gradient of chi m B^2/(2 mu0),
/// F_i = -(chi m / mu0) sum_j B_j dB_j/dx_i.
inline Vec3 trap_force(const TrapProfile& p, const TestMass& tm, double x, double y, double z) {
    p.validate();
    const Vec3 b = trap_field(p, x, y, z);
    const auto jac = detail::trap_field_jacobian(p, x, y, z);
    const double scale = -tm.chi_rho * tm.mass / constants::mu0;
    return {
        scale * (b.x * jac.grad_bx.x + b.y * jac.grad_by.x + b.z * jac.grad_bz.x),
        scale * (b.x * jac.grad_bx.y + b.y * jac.grad_by.y + b.z * jac.grad_bz.y),
        scale * (b.x * jac.grad_bx.z + b.y * jac.grad_by.z + b.z * jac.grad_bz.z),
    };
}

/// Pass/fail of the dominance conditions |V_EM| < |V_T| and |F_EM| < |F_T|
/// at given trap point values, with the trap/EM ratios as margins.
struct DominanceReport {
    double potential_margin = 0.0; // |V_T| / |V_EM|
    double force_margin = 0.0;     // |F_T,z| / |F_EM,z|
    bool potential_ok = false;
    bool force_ok = false;

    [[nodiscard]] bool pass() const { return potential_ok && force_ok; }
};

inline DominanceReport check_dominance(const TestMass& tm, double z, double b_field, double dbdz,
                                       const EmTermSelection& terms,
                                       Validity mode = Validity::lenient) {
    if (!std::isfinite(b_field) || !std::isfinite(dbdz)) {
        throw std::invalid_argument("check_dominance: field values must be finite");
    }
    const double v_em = em_plate_potential(tm, z, terms, mode);
    const double f_em = em_plate_force(tm, z, terms, mode);
    const double v_trap = std::abs(trap_potential(tm, b_field));
    const double f_trap = std::abs(tm.chi_rho) * tm.mass * std::abs(b_field) * std::abs(dbdz) /
                          constants::mu0;
    DominanceReport report;
    report.potential_margin = v_trap / v_em;
    report.force_margin = f_trap / f_em;
    // exact-threshold inputs count as satisfied
    report.potential_ok = report.potential_margin >= 1.0 - 1e-12;
    report.force_ok = report.force_margin >= 1.0 - 1e-12;
    return report;
}

} // namespace qgem
