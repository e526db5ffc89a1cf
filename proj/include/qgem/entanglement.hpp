#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "qgem/constants.hpp"

// Two-qubit entanglement generated by the Newtonian interaction of a pair of
// adjacent matter-wave interferometers. Covers the accumulated phases for the
// parallel and linear split configurations, the decohered density matrix, the
// partial-transpose spectrum, negativity, and the PPT-witness expectation in
// exact, linearized, and Pauli-expanded forms.
//
// Basis ordering is {uu, ud, du, dd} throughout; element (0,1) of the density
// matrix carries the phase of the second interferometer.

namespace qgem {

enum class Configuration { parallel, linear };

/// Geometry of the two-interferometer setup. `d` is the distance between the
/// near branches, `dx` the spatial superposition width of each interferometer.
/// For shielded setups, `z` is the sphere-plate distance and the inner
/// separation is constrained to d = 2 z + plate_thickness.
struct ExperimentGeometry {
    Configuration configuration = Configuration::parallel;
    double dx = 0.0;              // superposition width [m]
    double d = 0.0;               // inner separation [m]
    double z = 0.0;               // sphere-plate distance [m], 0 when unshielded
    double plate_thickness = 0.0; // [m]

    /// Unshielded geometry from the inner separation directly.
    static ExperimentGeometry separated(Configuration cfg, double dx, double d) {
        validate(dx, d);
        return {cfg, dx, d, 0.0, 0.0};
    }

    /// Shielded geometry: spheres a distance `z` from either face of a plate
    /// of the given thickness, so d = 2 z + plate_thickness.
    static ExperimentGeometry shielded(Configuration cfg, double dx, double z,
                                       double plate_thickness) {
        if (z <= 0.0) {
            throw std::invalid_argument("ExperimentGeometry: z must be positive");
        }
        if (plate_thickness < 0.0) {
            throw std::invalid_argument("ExperimentGeometry: negative plate thickness");
        }
        const double d = 2.0 * z + plate_thickness;
        validate(dx, d);
        return {cfg, dx, d, z, plate_thickness};
    }

private:
    static void validate(double dx, double d) {
        if (!(dx >= 0.0)) {
            throw std::invalid_argument("ExperimentGeometry: dx must be >= 0");
        }
        if (!(d > 0.0)) {
            throw std::invalid_argument("ExperimentGeometry: d must be positive");
        }
    }
};

/// Accumulated interferometer phases over one hold. `phi_global` is the
/// common phase removed from both branches; it drops out of every
/// entanglement measure but is kept for bookkeeping.
struct PhasePair {
    double phi1 = 0.0;       // [rad]
    double phi2 = 0.0;       // [rad]
    double phi_global = 0.0; // [rad]
    std::optional<Configuration> configuration{};

    [[nodiscard]] double sum() const { return phi1 + phi2; }
};

/**
 * Entanglement phases accumulated during a hold of duration tau.
 *
 * Parallel:  phi1 = phi2 = (G m^2 tau / hbar) (1/sqrt(d^2 + dx^2) - 1/d),
 *            always <= 0 for dx, d > 0.
 * Linear:    phi1 = (G m^2 tau / hbar) (1/d - 1/(d + dx)),
 *            phi2 = (G m^2 tau / hbar) (1/(d + 2 dx) - 1/(d + dx)),
 *            with phi1 + phi2 >= 0 for dx, d > 0.
 *
 * The superposition width is treated as constant over the hold; the ramp
 * phases of the splitting pulses are not modeled.
 */
inline PhasePair entanglement_phases(double mass, const ExperimentGeometry& geom, double tau) {
    if (!(mass > 0.0)) {
        throw std::invalid_argument("entanglement_phases: mass must be positive");
    }
    if (!(geom.d > 0.0)) {
        throw std::invalid_argument("entanglement_phases: d must be positive");
    }
    if (tau < 0.0) {
        throw std::invalid_argument("entanglement_phases: negative hold time");
    }
    const double coupling = constants::G * mass * mass * tau / constants::hbar; // [m]
    PhasePair out;
    out.configuration = geom.configuration;
    const double d = geom.d;
    const double dx = geom.dx;
    if (geom.configuration == Configuration::parallel) {
        const double s = std::hypot(d, dx);
        // 1/s - 1/d = -dx^2 / (s d (s + d)), cancellation-free
        const double phi = -coupling * dx * dx / (s * d * (s + d));
        out.phi1 = phi;
        out.phi2 = phi;
        out.phi_global = coupling / d;
    } else {
        out.phi1 = coupling * dx / (d * (d + dx));
        out.phi2 = -coupling * dx / ((d + dx) * (d + 2.0 * dx));
        out.phi_global = coupling / (d + dx);
    }
    return out;
}

/// Negativity of the pure two-qubit state, (1/2) |sin((phi1 + phi2)/2)|.
/// Lies in [0, 1/2] for any phases.
inline double negativity(const PhasePair& phases) {
    return 0.5 * std::abs(std::sin(0.5 * phases.sum()));
}

/// Phases plus the decoherence model: coherences of the density matrix decay
/// as exp(-gamma tau) per branch index that differs.
struct WitnessState {
    PhasePair phases;
    double gamma = 0.0; // decoherence rate [Hz]
    double tau = 0.0;   // hold time [s]

    WitnessState() = default;
    WitnessState(PhasePair p, double gamma_, double tau_) : phases(p), gamma(gamma_), tau(tau_) {
        if (gamma < 0.0) {
            throw std::invalid_argument("WitnessState: negative decoherence rate");
        }
        if (tau < 0.0) {
            throw std::invalid_argument("WitnessState: negative hold time");
        }
    }
};

/// 4x4 complex matrix in the {uu, ud, du, dd} product basis.
class DensityMatrix4 {
public:
    using Complex = std::complex<double>;

    [[nodiscard]] const Complex& at(int i, int j) const { return m_[i * 4 + j]; }
    Complex& at(int i, int j) { return m_[i * 4 + j]; }

    [[nodiscard]] double trace() const {
        return at(0, 0).real() + at(1, 1).real() + at(2, 2).real() + at(3, 3).real();
    }

    /// Tr(rho^2); 1 for a pure state.
    [[nodiscard]] double purity() const {
        double p = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                p += (at(i, j) * at(j, i)).real();
            }
        }
        return p;
    }

    [[nodiscard]] double max_hermiticity_defect() const {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
            }
        }
        return worst;
    }

    [[nodiscard]] double max_offdiagonal_abs() const {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (i != j) {
                    worst = std::max(worst, std::abs(at(i, j)));
                }
            }
        }
        return worst;
    }

private:
    std::array<Complex, 16> m_{};
};

/**
 * Decohered two-qubit density matrix of the post-hold state.
 *
 * Starting from the equal-amplitude product state, the branch amplitudes are
 * (1, e^{i phi2}, e^{i phi1}, 1)/2 and each coherence is damped by
 * exp(-gamma tau n), n being the number of interferometer indices in which
 * bra and ket differ. All diagonal entries are exactly 1/4; tau = 0 gives
 * back the pure-state projector.
 */
inline DensityMatrix4 density_matrix(const WitnessState& state) {
    const double gt = state.gamma * state.tau;
    const double branch_phase[4] = {0.0, state.phases.phi2, state.phases.phi1, 0.0};
    const double damp = std::exp(-gt);
    DensityMatrix4 rho;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const int differing = ((i ^ j) & 1 ? 1 : 0) + ((i ^ j) & 2 ? 1 : 0);
            double decay = 1.0;
            if (differing == 1) {
                decay = damp;
            } else if (differing == 2) {
                decay = damp * damp;
            }
            // phase differences keep the diagonal at exactly 1/4 and the
            // matrix Hermitian to the last bit
            rho.at(i, j) = std::polar(0.25 * decay, branch_phase[i] - branch_phase[j]);
        }
    }
    return rho;
}

/// Transpose of the second interferometer's indices,
/// rho^{T2}_{(a,b),(a',b')} = rho_{(a,b'),(a',b)}.
inline DensityMatrix4 partial_transpose_second(const DensityMatrix4& rho) {
    DensityMatrix4 out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bp = 0; bp < 2; ++bp) {
                    out.at(2 * a + b, 2 * ap + bp) = rho.at(2 * a + bp, 2 * ap + b);
                }
            }
        }
    }
    return out;
}

/**
 * Closed-form eigenvalues of the partially transposed density matrix, valid
 * for any (phi1, phi2, gamma tau):
 *
 *   lambda[0] = 1/4 - (1/4) E (E - 2 sin x)   <- witness branch, parallel
 *   lambda[1] = 1/4 - (1/4) E (E + 2 sin x)   <- witness branch, linear
 *   lambda[2] = 1/4 + (1/4) E (E + 2 cos x)
 *   lambda[3] = 1/4 + (1/4) E (E - 2 cos x)
 *
 * with E = exp(-gamma tau) and x = (phi1 + phi2)/2. They sum to 1, and at
 * gamma = 0 reduce to {sin x / 2, -sin x / 2, 1/2 + cos x / 2, 1/2 - cos x / 2}.
 */
inline std::array<double, 4> pt_eigenvalues(const WitnessState& state) {
    const double damp = std::exp(-state.gamma * state.tau);
    const double half_sum = 0.5 * state.phases.sum();
    const double s = std::sin(half_sum);
    const double c = std::cos(half_sum);
    return {
        0.25 - 0.25 * damp * (damp - 2.0 * s),
        0.25 - 0.25 * damp * (damp + 2.0 * s),
        0.25 + 0.25 * damp * (damp + 2.0 * c),
        0.25 + 0.25 * damp * (damp - 2.0 * c),
    };
}

/// PPT-witness expectation: the sign branch is picked by the configuration
/// tag when the phases carry one, otherwise the smaller of the two witness
/// branches is returned. Negative value certifies entanglement.
inline double witness_expectation(const WitnessState& state) {
    const auto lambda = pt_eigenvalues(state);
    if (state.phases.configuration == Configuration::parallel) {
        return lambda[0];
    }
    if (state.phases.configuration == Configuration::linear) {
        return lambda[1];
    }
    return std::min(lambda[0], lambda[1]);
}

/// Small-time witness expectation, (gamma - |omega_ent|) tau / 2. Negative
/// exactly when the entanglement rate beats the decoherence rate.
inline double witness_expectation_linearized(double gamma, double omega_ent, double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("witness_expectation_linearized: negative hold time");
    }
    return 0.5 * (gamma - std::abs(omega_ent)) * tau;
}

/// Element-wise Pauli expansion of Tr(W rho) for the fixed witness branch.
/// `plus_branch` selects the parallel-branch sign pattern.
inline double pauli_witness_trace(const DensityMatrix4& rho, bool plus_branch) {
    const double sign = plus_branch ? 1.0 : -1.0;
    return rho.trace() - 2.0 * sign * rho.at(0, 1).imag() - 2.0 * sign * rho.at(0, 2).imag() -
           2.0 * rho.at(0, 3).real() - 2.0 * rho.at(1, 2).real() +
           2.0 * sign * rho.at(1, 3).imag() + 2.0 * sign * rho.at(2, 3).imag();
}

/**
 * Witness expectation evaluated through the Pauli expansion of the fixed
 * witness operator, applied to the density matrix elements. Normalization
 * follows the expansion itself: the returned value is 4 <W>.
 *
 * The fixed operator is exact for phi1 = phi2 (the parallel configuration,
 * where it coincides with 4x the minimal partial-transpose eigenvalue for
 * every gamma); for unequal phases it is the expectation of the witness
 * constructed at zero phase.
 */
inline double witness_via_pauli_expansion(const WitnessState& state) {
    const DensityMatrix4 rho = density_matrix(state);
    if (state.phases.configuration == Configuration::parallel) {
        return pauli_witness_trace(rho, true);
    }
    if (state.phases.configuration == Configuration::linear) {
        return pauli_witness_trace(rho, false);
    }
    return std::min(pauli_witness_trace(rho, true), pauli_witness_trace(rho, false));
}

} // namespace qgem
