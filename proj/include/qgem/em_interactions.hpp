#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgem/constants.hpp"
#include "qgem/vec3.hpp"

// Electromagnetic potentials and forces competing with gravity in the
// shielded setup: dipole-dipole and Casimir-Polder terms between the two
// spheres and between a sphere and the conducting plate, plus the induced
// electric and magnetic dipole estimates.

namespace qgem {

/// Bulk material parameters of a test sphere.
struct Material {
    double epsilon = 0.0;  // dielectric constant, >= 1
    double density = 0.0;  // [kg/m^3]
    double chi_rho = 0.0;  // mass magnetic susceptibility [m^3/kg], < 0 diamagnetic

    static Material diamond() { return {5.1, 3500.0, -6.2e-9}; }
};

/// Sphere radius for a given mass and bulk density, (3 m / 4 pi rho)^(1/3).
inline double radius_from_mass(double mass, double density) {
    if (!(mass > 0.0) || !(density > 0.0)) {
        throw std::invalid_argument("radius_from_mass: mass and density must be positive");
    }
    return std::cbrt(3.0 * mass / (4.0 * std::numbers::pi * density));
}

/// Default permanent electric dipole magnitude, 1e-4 e*m in SI [C m].
inline double default_permanent_dipole() { return dipole_e_m_to_si(1e-4); }

/// Permanent dipole under the volume-scaling model: the squared magnitude
/// grows with sphere volume, |d| = d0 (R/R0)^(3/2), anchored at
/// d0 = 1e-4 e*m for R0 = 10 um. Makes the field-requirement bounds
/// mass-independent.
inline double volume_scaled_dipole(double radius, double baseline_radius = 1e-5,
                                   double baseline_dipole_si = dipole_e_m_to_si(1e-4)) {
    if (!(radius > 0.0) || !(baseline_radius > 0.0)) {
        throw std::invalid_argument("volume_scaled_dipole: radii must be positive");
    }
    return baseline_dipole_si * std::pow(radius / baseline_radius, 1.5);
}

/// Spherical test mass. Radius is derived from mass and density unless
/// overridden explicitly.
struct TestMass {
    double mass = 0.0;         // [kg]
    double radius = 0.0;       // [m]
    double epsilon = 0.0;      // dielectric constant
    double density = 0.0;      // [kg/m^3]
    double chi_rho = 0.0;      // [m^3/kg]
    double dipole = 0.0;       // electric dipole magnitude [C m]
    double dipole_angle = 0.0; // angle to the plate normal [rad]

    static TestMass make(double mass, const Material& mat,
                         double dipole_si = default_permanent_dipole(),
                         double dipole_angle = 0.0) {
        if (!(mat.epsilon >= 1.0)) {
            throw std::invalid_argument("TestMass: dielectric constant must be >= 1");
        }
        if (dipole_si < 0.0) {
            throw std::invalid_argument("TestMass: negative dipole magnitude");
        }
        TestMass tm;
        tm.mass = mass;
        tm.radius = radius_from_mass(mass, mat.density);
        tm.epsilon = mat.epsilon;
        tm.density = mat.density;
        tm.chi_rho = mat.chi_rho;
        tm.dipole = dipole_si;
        tm.dipole_angle = dipole_angle;
        return tm;
    }

    /// (epsilon - 1) / (epsilon + 2), the dielectric response factor of the
    /// static polarizability alpha = R^3 (eps - 1)/(eps + 2).
    [[nodiscard]] double dielectric_factor() const { return (epsilon - 1.0) / (epsilon + 2.0); }

    [[nodiscard]] double radius3() const { return radius * radius * radius; }
};

/// Which plate-facing EM terms enter a field-requirement computation.
struct EmTermSelection {
    bool include_dipole = false;
    bool include_casimir_polder = true;

    [[nodiscard]] bool any() const { return include_dipole || include_casimir_polder; }

    static EmTermSelection casimir_polder_only() { return {false, true}; }
    static EmTermSelection dipole_and_casimir_polder() { return {true, true}; }
};

/// Near-field validity guards: lenient mode evaluates anyway so sweeps can
/// map invalid regions; strict mode throws.
enum class Validity { lenient, strict };

namespace detail {
inline void validity_guard(bool ok, Validity mode, const char* what) {
    if (!ok && mode == Validity::strict) {
        throw std::domain_error(what);
    }
}
} // namespace detail

/// Electric dipole-dipole potential between the two spheres [J],
/// (1/4 pi eps0) (d1.d2 / r^3 - 3 (d1.r)(d2.r) / r^5) with full vectors.
inline double v_dd_sphere_sphere(const Vec3& d1, const Vec3& d2, const Vec3& r_vec) {
    const double r2 = r_vec.norm2();
    if (!(r2 > 0.0)) {
        throw std::invalid_argument("v_dd_sphere_sphere: zero separation");
    }
    const double r = std::sqrt(r2);
    const double r3 = r2 * r;
    const double r5 = r3 * r2;
    return constants::k_coulomb * (d1.dot(d2) / r3 - 3.0 * d1.dot(r_vec) * d2.dot(r_vec) / r5);
}

/// Casimir-Polder potential between the two spheres [J],
/// -(23 hbar c / 4 pi) f1 f2 R1^3 R2^3 / r^7 with f = (eps-1)/(eps+2).
/// Far-field form; guarded for r > R1 + R2.
inline double v_cp_sphere_sphere(const TestMass& a, const TestMass& b, double r,
                                 Validity mode = Validity::lenient) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("v_cp_sphere_sphere: separation must be positive");
    }
    detail::validity_guard(r > a.radius + b.radius, mode,
                           "v_cp_sphere_sphere: separation inside far-field validity bound");
    const double r7 = std::pow(r, 7);
    return -(23.0 * constants::hbar_c / (4.0 * std::numbers::pi)) * a.dielectric_factor() *
           b.dielectric_factor() * a.radius3() * b.radius3() / r7;
}

/// Image-dipole potential between a sphere dipole and the grounded plate [J],
/// -K (|d|^2 / z^3)(1 + cos^2 theta). The printed expression carries no
/// electrostatic prefactor; K defaults to 1/(4 pi eps0) to restore Joules and
/// is exposed for alternative image conventions.
inline double v_dd_sphere_plate(double dipole, double theta, double z,
                                double prefactor = constants::k_coulomb) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("v_dd_sphere_plate: z must be positive");
    }
    const double cos_t = std::cos(theta);
    return -prefactor * dipole * dipole / (z * z * z) * (1.0 + cos_t * cos_t);
}

/// z-component of the dipole-plate force [N], -3 K (|d|^2 / z^4)(1 + cos^2 theta).
/// Negative: directed toward the plate. Equals -dV/dz of v_dd_sphere_plate.
inline double f_dd_sphere_plate(double dipole, double theta, double z,
                                double prefactor = constants::k_coulomb) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("f_dd_sphere_plate: z must be positive");
    }
    const double cos_t = std::cos(theta);
    return -3.0 * prefactor * dipole * dipole / (z * z * z * z) * (1.0 + cos_t * cos_t);
}

/// Casimir-Polder potential between a sphere and the plate [J],
/// -(3 hbar c / 8 pi) f R^3 / z^4. Guarded for z > R.
inline double v_cp_sphere_plate(const TestMass& tm, double z, Validity mode = Validity::lenient) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("v_cp_sphere_plate: z must be positive");
    }
    detail::validity_guard(z > tm.radius, mode, "v_cp_sphere_plate: z inside sphere radius");
    return -(3.0 * constants::hbar_c / (8.0 * std::numbers::pi)) * tm.dielectric_factor() *
           tm.radius3() / (z * z * z * z);
}

/// z-component of the sphere-plate Casimir-Polder force [N],
/// -(3 hbar c / 2 pi) f R^3 / z^5. Analytically -dV/dz of v_cp_sphere_plate.
inline double f_cp_sphere_plate(const TestMass& tm, double z, Validity mode = Validity::lenient) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("f_cp_sphere_plate: z must be positive");
    }
    detail::validity_guard(z > tm.radius, mode, "f_cp_sphere_plate: z inside sphere radius");
    return -(3.0 * constants::hbar_c / (2.0 * std::numbers::pi)) * tm.dielectric_factor() *
           tm.radius3() / (z * z * z * z * z);
}

/// Induced electric dipole magnitude in an external field [C m],
/// 4 pi eps0 alpha E with alpha = R^3 (eps - 1)/(eps + 2).
inline double induced_electric_dipole(const TestMass& tm, double e_field) {
    if (e_field < 0.0) {
        throw std::invalid_argument("induced_electric_dipole: negative field magnitude");
    }
    return 4.0 * std::numbers::pi * constants::eps0 * tm.radius3() * tm.dielectric_factor() *
           e_field;
}

/// Induced magnetic dipole-dipole potential magnitude between the two
/// diamagnetic spheres in an applied field [J],
/// 2 chi1 chi2 m1 m2 B^2 / (4 pi mu0 r^3). Quadratic in B.
inline double u_induced_magnetic_dd(const TestMass& a, const TestMass& b, double b_field,
                                    double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("u_induced_magnetic_dd: separation must be positive");
    }
    return 2.0 * std::abs(a.chi_rho * b.chi_rho) * a.mass * b.mass * b_field * b_field /
           (4.0 * std::numbers::pi * constants::mu0 * r * r * r);
}

/// Summed magnitude of the selected plate-facing potentials [J].
inline double em_plate_potential(const TestMass& tm, double z, const EmTermSelection& terms,
                                 Validity mode = Validity::lenient) {
    if (!terms.any()) {
        throw std::invalid_argument("em_plate_potential: empty term selection");
    }
    double total = 0.0;
    if (terms.include_dipole) {
        total += std::abs(v_dd_sphere_plate(tm.dipole, tm.dipole_angle, z));
    }
    if (terms.include_casimir_polder) {
        total += std::abs(v_cp_sphere_plate(tm, z, mode));
    }
    return total;
}

/// Summed magnitude of the selected plate-facing z-forces [N].
inline double em_plate_force(const TestMass& tm, double z, const EmTermSelection& terms,
                             Validity mode = Validity::lenient) {
    if (!terms.any()) {
        throw std::invalid_argument("em_plate_force: empty term selection");
    }
    double total = 0.0;
    if (terms.include_dipole) {
        total += std::abs(f_dd_sphere_plate(tm.dipole, tm.dipole_angle, z));
    }
    if (terms.include_casimir_polder) {
        total += std::abs(f_cp_sphere_plate(tm, z, mode));
    }
    return total;
}

} // namespace qgem
