#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qgem/constants.hpp"
#include "qgem/em_interactions.hpp"
#include "qgem/entanglement.hpp"

// Inverse design questions: the superposition width needed for a target
// entanglement rate or decoherence budget, feasibility sweeps over parameter
// grids, and the gravity-vs-EM dominance report.

namespace qgem {

/// Entanglement rate of the parallel configuration [rad/s], signed
/// (negative for dx, d > 0):
/// omega_ent = (1/sqrt(d^2 + dx^2) - 1/d) G m^2 / hbar.
inline double omega_ent(double mass, double d, double dx) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("omega_ent: d must be positive");
    }
    if (dx < 0.0) {
        throw std::invalid_argument("omega_ent: dx must be >= 0");
    }
    const double coupling = constants::G * mass * mass / constants::hbar; // [m/s]
    const double s = std::hypot(d, dx);
    return -coupling * dx * dx / (s * d * (s + d));
}

/// Entanglement rate of the linear configuration [rad/s], signed (positive):
/// (phi1 + phi2) / (2 tau) with the linear-configuration phases.
inline double omega_ent_linear(double mass, double d, double dx) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("omega_ent_linear: d must be positive");
    }
    if (dx < 0.0) {
        throw std::invalid_argument("omega_ent_linear: dx must be >= 0");
    }
    const double coupling = constants::G * mass * mass / constants::hbar;
    return coupling * dx * dx / (d * (d + dx) * (d + 2.0 * dx));
}

/// |omega_ent| for either configuration.
inline double entanglement_rate(double mass, double d, double dx, Configuration cfg) {
    return cfg == Configuration::parallel ? -omega_ent(mass, d, dx)
                                          : omega_ent_linear(mass, d, dx);
}

/// Supremum of the achievable |omega_ent| at fixed d (the dx -> infinity
/// limit), G m^2 / (hbar d), identical for both configurations.
inline double rate_saturation(double mass, double d) {
    return constants::G * mass * mass / (constants::hbar * d);
}

enum class InfeasibleReason { none, rate_saturation, decoherence_dominated };

/// Outcome of an inverse-design solve. Infeasible points carry a reason code
/// instead of throwing so grid sweeps can chart feasibility boundaries.
struct DesignResult {
    double dx_min = 0.0;  // [m]
    bool feasible = false;
    InfeasibleReason reason = InfeasibleReason::none;
    double margin = 0.0;  // achieved |omega_ent| - gamma [Hz]
};

namespace detail {

/// Bisection inversion of the monotone map dx -> |omega_ent(dx)|.
inline double dx_for_rate_bisect(double mass, double d, double rate, Configuration cfg) {
    double lo = 0.0;
    double hi = d;
    while (entanglement_rate(mass, d, hi, cfg) < rate) {
        hi *= 2.0;
        if (hi > 1e12 * d) {
            throw std::runtime_error("dx_for_rate_bisect: failed to bracket target rate");
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (entanglement_rate(mass, d, mid, cfg) < rate) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * hi) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/**
 * Minimal superposition width for a target entanglement rate [m].
 *
 * Parallel configuration, closed form:
 *   dx = sqrt((G m^2/hbar / (G m^2/(hbar d) - rate))^2 - d^2),
 * evaluated cancellation-free through s - d = d rate / (G m^2/(hbar d) - rate).
 * Linear configuration inverts the rate numerically (no closed form).
 *
 * Rates at or above the saturation bound G m^2/(hbar d) are unreachable at
 * any width and come back flagged infeasible.
 */
inline DesignResult dx_for_rate(double mass, double d, double rate,
                                Configuration cfg = Configuration::parallel) {
    if (!(mass > 0.0) || !(d > 0.0)) {
        throw std::invalid_argument("dx_for_rate: mass and d must be positive");
    }
    if (rate < 0.0) {
        throw std::invalid_argument("dx_for_rate: negative target rate");
    }
    DesignResult out;
    if (rate == 0.0) {
        out.feasible = true;
        out.margin = 0.0;
        return out;
    }
    const double saturation = rate_saturation(mass, d);
    if (rate >= saturation) {
        out.feasible = false;
        out.reason = InfeasibleReason::rate_saturation;
        return out;
    }
    if (cfg == Configuration::parallel) {
        const double s_minus_d = d * rate / (saturation - rate);
        out.dx_min = std::sqrt(s_minus_d * (2.0 * d + s_minus_d));
    } else {
        out.dx_min = detail::dx_for_rate_bisect(mass, d, rate, cfg);
    }
    out.feasible = true;
    out.margin = rate;
    return out;
}

/// Bisection route for the same inversion, used to cross-check the closed
/// form and as the only route for the linear configuration.
inline DesignResult dx_for_rate_numeric(double mass, double d, double rate,
                                        Configuration cfg = Configuration::parallel) {
    if (!(mass > 0.0) || !(d > 0.0)) {
        throw std::invalid_argument("dx_for_rate_numeric: mass and d must be positive");
    }
    if (rate < 0.0) {
        throw std::invalid_argument("dx_for_rate_numeric: negative target rate");
    }
    DesignResult out;
    if (rate == 0.0) {
        out.feasible = true;
        return out;
    }
    if (rate >= rate_saturation(mass, d)) {
        out.feasible = false;
        out.reason = InfeasibleReason::rate_saturation;
        return out;
    }
    out.dx_min = detail::dx_for_rate_bisect(mass, d, rate, cfg);
    out.feasible = true;
    out.margin = rate;
    return out;
}

/**
 * Minimal superposition width for a witness target [m] (parallel setup):
 *
 *   dx > sqrt((G m^2 / (G m^2/d - gamma hbar + <W> hbar/(2 tau)))^2 - d^2).
 *
 * At w_target = 0 this coincides with dx_for_rate(mass, d, gamma). A
 * non-positive denominator or negative radicand means no width can reach the
 * target at this (mass, d, gamma); the result is flagged infeasible.
 */
inline DesignResult dx_for_witness(double mass, double d, double gamma, double tau,
                                   double w_target) {
    if (!(mass > 0.0) || !(d > 0.0)) {
        throw std::invalid_argument("dx_for_witness: mass and d must be positive");
    }
    if (gamma < 0.0) {
        throw std::invalid_argument("dx_for_witness: negative decoherence rate");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("dx_for_witness: hold time must be positive");
    }
    const double gm2 = constants::G * mass * mass;
    const double denom =
        gm2 / d - gamma * constants::hbar + w_target * constants::hbar / (2.0 * tau);
    DesignResult out;
    if (!(denom > 0.0)) {
        out.feasible = false;
        out.reason = InfeasibleReason::decoherence_dominated;
        return out;
    }
    // s - d = d hbar (gamma - w/(2 tau)) / denom, cancellation-free
    const double s_minus_d =
        d * constants::hbar * (gamma - w_target / (2.0 * tau)) / denom;
    if (s_minus_d < 0.0) {
        out.feasible = false;
        out.reason = InfeasibleReason::decoherence_dominated;
        return out;
    }
    out.dx_min = std::sqrt(s_minus_d * (2.0 * d + s_minus_d));
    out.feasible = true;
    out.margin = -omega_ent(mass, d, out.dx_min) - gamma;
    return out;
}

/// One grid point of a feasibility sweep: exactly one of the rate-based or
/// witness-based objectives must be active.
struct DesignQuery {
    double mass = 0.0; // [kg]
    double d = 0.0;    // [m]
    double tau = 1.0;  // [s]
    std::optional<double> omega_target{}; // target |omega_ent| [Hz]
    std::optional<double> gamma{};        // decoherence rate [Hz], with witness_target
    double witness_target = 0.0;
    Configuration configuration = Configuration::parallel;

    void validate() const {
        if (omega_target.has_value() == gamma.has_value()) {
            throw std::invalid_argument(
                "DesignQuery: exactly one of omega_target / gamma must be set");
        }
        if (omega_target && *omega_target < 0.0) {
            throw std::invalid_argument("DesignQuery: negative target rate");
        }
        if (gamma && *gamma < 0.0) {
            throw std::invalid_argument("DesignQuery: negative decoherence rate");
        }
    }
};

inline DesignResult solve(const DesignQuery& q) {
    q.validate();
    if (q.omega_target) {
        return dx_for_rate(q.mass, q.d, *q.omega_target, q.configuration);
    }
    return dx_for_witness(q.mass, q.d, *q.gamma, q.tau, q.witness_target);
}

/// Evaluate every query of a grid in order. Infeasible points are flagged in
/// place, never dropped; an empty grid is rejected.
inline std::vector<DesignResult> feasibility_sweep(const std::vector<DesignQuery>& grid) {
    if (grid.empty()) {
        throw std::invalid_argument("feasibility_sweep: empty grid");
    }
    std::vector<DesignResult> results;
    results.reserve(grid.size());
    for (const auto& q : grid) {
        results.push_back(solve(q));
    }
    return results;
}

/// Gravitational potential next to the competing unscreened couplings at
/// separation r and applied field b. The electric dipole-dipole entry uses
/// the collinear worst-case orientation.
struct GravityDominance {
    double v_gravity = 0.0;   // G m1 m2 / r [J]
    double u_magnetic = 0.0;  // induced magnetic dipole-dipole [J]
    double v_dd = 0.0;        // |electric dipole-dipole|, collinear [J]
    double v_cp = 0.0;        // |sphere-sphere Casimir-Polder| [J]
    double magnetic_ratio = 0.0;
    double dd_ratio = 0.0;
    double cp_ratio = 0.0;
};

inline GravityDominance gravity_dominance(const TestMass& a, const TestMass& b, double r,
                                          double b_field, Validity mode = Validity::lenient) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("gravity_dominance: separation must be positive");
    }
    GravityDominance rep;
    rep.v_gravity = constants::G * a.mass * b.mass / r;
    rep.u_magnetic = u_induced_magnetic_dd(a, b, b_field, r);
    const Vec3 axis{0.0, 0.0, 1.0};
    rep.v_dd = std::abs(v_dd_sphere_sphere(axis * a.dipole, axis * b.dipole, axis * r));
    rep.v_cp = std::abs(v_cp_sphere_sphere(a, b, r, mode));
    rep.magnetic_ratio = rep.u_magnetic / rep.v_gravity;
    rep.dd_ratio = rep.v_dd / rep.v_gravity;
    rep.cp_ratio = rep.v_cp / rep.v_gravity;
    return rep;
}

} // namespace qgem
