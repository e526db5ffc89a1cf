#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

// Physical constants (SI, CODATA 2018) and the unit-tagged scalar used at
// input boundaries. Everything downstream works in plain SI doubles.

namespace qgem {
namespace constants {

/// Newtonian gravitational constant [m^3 kg^-1 s^-2].
inline constexpr double G = 6.67430e-11;

/// Planck constant [J s], exact since the 2019 SI redefinition.
inline constexpr double h_planck = 6.62607015e-34;

/// Reduced Planck constant [J s].
inline constexpr double hbar = h_planck / (2.0 * std::numbers::pi);

/// Speed of light in vacuum [m/s], exact.
inline constexpr double c = 299792458.0;

/// Vacuum permeability [H/m].
inline constexpr double mu0 = 1.25663706212e-6;

/// Vacuum permittivity [F/m].
inline constexpr double eps0 = 8.8541878128e-12;

/// Elementary charge [C], exact.
inline constexpr double e_charge = 1.602176634e-19;

/// Coulomb prefactor 1/(4*pi*eps0) [N m^2 C^-2].
inline constexpr double k_coulomb = 1.0 / (4.0 * std::numbers::pi * eps0);

/// hbar*c [J m], common factor of the Casimir-Polder potentials.
inline constexpr double hbar_c = hbar * c;

} // namespace constants

// ---------------------------------------------------------------------------
// Dimension-tagged scalar
// ---------------------------------------------------------------------------

// Tag checks are active in debug/test builds and compiled out in release
// (define QGEM_DIMENSION_CHECKS to override either way).
#ifndef QGEM_DIMENSION_CHECKS
#ifdef NDEBUG
#define QGEM_DIMENSION_CHECKS 0
#else
#define QGEM_DIMENSION_CHECKS 1
#endif
#endif

enum class Dimension {
    length,
    mass,
    time,
    energy,
    force,
    magnetic_field,
    field_gradient,
    dipole,
    dimensionless,
};

inline const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::length: return "length";
        case Dimension::mass: return "mass";
        case Dimension::time: return "time";
        case Dimension::energy: return "energy";
        case Dimension::force: return "force";
        case Dimension::magnetic_field: return "magnetic_field";
        case Dimension::field_gradient: return "field_gradient";
        case Dimension::dipole: return "dipole";
        case Dimension::dimensionless: return "dimensionless";
    }
    return "?";
}

/// SI scalar carrying a runtime dimension tag. Addition and subtraction
/// across mismatched tags throw; scaling by a bare double is always allowed.
class Quantity {
public:
    constexpr Quantity(double value, Dimension dim) : value_(value), dim_(dim) {}

    [[nodiscard]] constexpr double value() const { return value_; }
    [[nodiscard]] constexpr Dimension dimension() const { return dim_; }

    Quantity operator+(const Quantity& other) const {
        require_same(other);
        return {value_ + other.value_, dim_};
    }
    Quantity operator-(const Quantity& other) const {
        require_same(other);
        return {value_ - other.value_, dim_};
    }
    constexpr Quantity operator*(double s) const { return {value_ * s, dim_}; }
    constexpr Quantity operator/(double s) const { return {value_ / s, dim_}; }
    constexpr Quantity operator-() const { return {-value_, dim_}; }

    /// Ratio of two quantities of the same dimension (dimensionless result).
    double ratio(const Quantity& other) const {
        require_same(other);
        return value_ / other.value_;
    }

    bool operator<(const Quantity& other) const {
        require_same(other);
        return value_ < other.value_;
    }
    bool operator==(const Quantity& other) const {
        require_same(other);
        return value_ == other.value_;
    }

private:
    void require_same(const Quantity& other) const {
#if QGEM_DIMENSION_CHECKS
        if (dim_ != other.dim_) {
            throw std::logic_error(std::string("dimension mismatch: ") + dimension_name(dim_) +
                                   " vs " + dimension_name(other.dim_));
        }
#else
        (void)other;
#endif
    }

    double value_;
    Dimension dim_;
};

inline constexpr Quantity operator*(double s, const Quantity& q) { return q * s; }

inline constexpr Quantity meters(double v) { return {v, Dimension::length}; }
inline constexpr Quantity kilograms(double v) { return {v, Dimension::mass}; }
inline constexpr Quantity seconds(double v) { return {v, Dimension::time}; }
inline constexpr Quantity joules(double v) { return {v, Dimension::energy}; }
inline constexpr Quantity newtons(double v) { return {v, Dimension::force}; }
inline constexpr Quantity teslas(double v) { return {v, Dimension::magnetic_field}; }

// ---------------------------------------------------------------------------
// Dipole unit conversion (e*m at the boundary, C*m internally)
// ---------------------------------------------------------------------------

/// Convert an electric dipole moment from e*m to C*m. Rejects negative input.
inline double dipole_e_m_to_si(double d_e_m) {
    if (d_e_m < 0.0) {
        throw std::invalid_argument("dipole_e_m_to_si: negative dipole magnitude");
    }
    return d_e_m * constants::e_charge;
}

/// Convert an electric dipole moment from C*m back to e*m.
inline double dipole_si_to_e_m(double d_si) {
    if (d_si < 0.0) {
        throw std::invalid_argument("dipole_si_to_e_m: negative dipole magnitude");
    }
    return d_si / constants::e_charge;
}

} // namespace qgem
