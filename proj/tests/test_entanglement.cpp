#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/approx.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "qgem/constants.hpp"
#include "qgem/entanglement.hpp"
#include "support/hermitian4.hpp"

using namespace qgem;
using qgem_test::hermitian4_eigenvalues;

namespace {

WitnessState make_state(double phi1, double phi2, double gamma, double tau,
                        std::optional<Configuration> cfg = std::nullopt) {
    PhasePair p;
    p.phi1 = phi1;
    p.phi2 = phi2;
    p.configuration = cfg;
    return WitnessState(p, gamma, tau);
}

} // namespace

TEST_CASE("geometry construction and validation") {
    const auto geom = ExperimentGeometry::shielded(Configuration::parallel, 8.5e-6, 30e-6, 1e-6);
    CHECK(geom.d == RelApprox(61e-6).epsilon(1e-15));
    CHECK(geom.z == 30e-6);

    CHECK_THROWS_AS(ExperimentGeometry::separated(Configuration::parallel, -1e-6, 10e-6),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentGeometry::separated(Configuration::parallel, 1e-6, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentGeometry::shielded(Configuration::parallel, 1e-6, 0.0, 1e-6),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentGeometry::shielded(Configuration::parallel, 1e-6, 10e-6, -1e-6),
                    std::invalid_argument);
}

TEST_CASE("parallel phases reproduce the 0.01 Hz design point") {
    const auto geom = ExperimentGeometry::shielded(Configuration::parallel, 8.5e-6, 30e-6, 1e-6);
    const auto phases = entanglement_phases(1e-14, geom, 1.0);

    CHECK(phases.phi1 == phases.phi2);
    CHECK(phases.phi1 < 0.0);
    // oracle: direct evaluation of the phase difference
    const double coupling = constants::G * 1e-28 / constants::hbar;
    const double expected = coupling * (1.0 / std::hypot(61e-6, 8.5e-6) - 1.0 / 61e-6);
    CHECK(phases.phi1 == RelApprox(expected).epsilon(1e-12));
    CHECK(phases.phi1 == RelApprox(-9.928394993e-3).epsilon(1e-8));
    // |phi1|/tau is the tabulated 0.01 Hz entanglement rate
    CHECK(std::abs(phases.phi1) == RelApprox(0.01).epsilon(0.01));
    CHECK(phases.phi_global == RelApprox(coupling / 61e-6).epsilon(1e-12));
}

TEST_CASE("degenerate superposition carries no relative phase") {
    const auto geom = ExperimentGeometry::separated(Configuration::parallel, 0.0, 61e-6);
    const auto phases = entanglement_phases(1e-14, geom, 1.0);
    CHECK(phases.phi1 == 0.0);
    CHECK(phases.phi2 == 0.0);
    CHECK(negativity(phases) == 0.0);
}

TEST_CASE("linear phases against the direct arithmetic oracle") {
    const double m = 1e-14, d = 61e-6, dx = 8.5e-6, tau = 1.0;
    const auto geom = ExperimentGeometry::separated(Configuration::linear, dx, d);
    const auto phases = entanglement_phases(m, geom, tau);

    const double coupling = constants::G * m * m * tau / constants::hbar;
    const double phi1_oracle = coupling * (1.0 / d - 1.0 / (d + dx));
    const double phi2_oracle = coupling * (1.0 / (d + 2.0 * dx) - 1.0 / (d + dx));
    CHECK(phases.phi1 == RelApprox(phi1_oracle).epsilon(1e-12));
    CHECK(phases.phi2 == RelApprox(phi2_oracle).epsilon(1e-12));
    CHECK(phases.phi1 == RelApprox(1.268918849e-1).epsilon(1e-8));
    CHECK(phases.phi2 == RelApprox(-9.923596129e-2).epsilon(1e-8));
    CHECK(phases.phi_global == RelApprox(coupling / (d + dx)).epsilon(1e-12));
    CHECK(phases.sum() > 0.0);
}

TEST_CASE("phase input validation") {
    const auto geom = ExperimentGeometry::separated(Configuration::parallel, 1e-6, 10e-6);
    CHECK_THROWS_AS(entanglement_phases(0.0, geom, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(entanglement_phases(-1e-14, geom, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(entanglement_phases(1e-14, geom, -1.0), std::invalid_argument);
}

TEST_CASE("phase sum signs over random geometries") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> log_d(-6.0, -3.0);  // 1 um .. 1 mm
    std::uniform_real_distribution<double> log_dx(-7.0, -3.0);
    for (int i = 0; i < 10000; ++i) {
        const double d = std::pow(10.0, log_d(rng));
        const double dx = std::pow(10.0, log_dx(rng));
        const auto par = entanglement_phases(
            1e-14, ExperimentGeometry::separated(Configuration::parallel, dx, d), 1.0);
        const auto lin = entanglement_phases(
            1e-14, ExperimentGeometry::separated(Configuration::linear, dx, d), 1.0);
        CHECK(par.sum() < 0.0);
        CHECK(lin.sum() > 0.0);
    }
}

TEST_CASE("negativity") {
    PhasePair p;
    p.phi1 = 0.0;
    p.phi2 = 0.0;
    CHECK(negativity(p) == 0.0);

    p.phi1 = 0.5 * std::numbers::pi;
    p.phi2 = 0.5 * std::numbers::pi;
    CHECK(negativity(p) == RelApprox(0.5).epsilon(1e-15));

    p.phi1 = 0.012;
    p.phi2 = 0.008;
    CHECK(negativity(p) == RelApprox(4.999916667083e-3).epsilon(1e-12));

    // matches |most negative PT eigenvalue| at gamma = 0
    const auto state = make_state(0.012, 0.008, 0.0, 1.0);
    const auto eig = hermitian4_eigenvalues(partial_transpose_second(density_matrix(state)));
    CHECK(negativity(p) == RelApprox(std::abs(eig[0])).epsilon(1e-10));
}

TEST_CASE("density matrix limits") {
    SUBCASE("full decoherence leaves the maximally mixed diagonal") {
        const auto rho = density_matrix(make_state(0.3, -0.2, 1e3, 1.0));
        CHECK(rho.max_offdiagonal_abs() <= 1e-200);
        for (int i = 0; i < 4; ++i) {
            CHECK(rho.at(i, i).real() == 0.25);
        }
    }
    SUBCASE("zero hold time is a rank-1 projector") {
        const auto rho = density_matrix(make_state(0.7, -1.1, 5.0, 0.0));
        CHECK(rho.purity() == RelApprox(1.0).epsilon(1e-14));
        CHECK(rho.trace() == RelApprox(1.0).epsilon(1e-14));
    }
}

TEST_CASE("density matrix is a valid state for random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> rate(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const auto state = make_state(phase(rng), phase(rng), rate(rng), 1.0);
        const auto rho = density_matrix(state);
        CHECK(rho.max_hermiticity_defect() <= 1e-14);
        CHECK(rho.trace() == RelApprox(1.0).epsilon(1e-14));
        for (int k = 0; k < 4; ++k) {
            CHECK(rho.at(k, k).real() == 0.25);
        }
        const auto eig = hermitian4_eigenvalues(rho);
        CHECK(eig[0] >= -1e-12);
        CHECK(eig[3] <= 1.0 + 1e-12);
    }
}

TEST_CASE("partial-transpose eigenvalues: known points") {
    SUBCASE("zero phases, no decoherence") {
        const auto lam = pt_eigenvalues(make_state(0.0, 0.0, 0.0, 1.0));
        std::array<double, 4> sorted = lam;
        std::sort(sorted.begin(), sorted.end());
        // multiset {0, 0, 0, 1}, exact at this corner
        CHECK(sorted[0] == 0.0);
        CHECK(sorted[1] == 0.0);
        CHECK(sorted[2] == 0.0);
        CHECK(sorted[3] == 1.0);
    }
    SUBCASE("phi1 + phi2 = pi/2, gamma = 0") {
        const auto state = make_state(0.25 * std::numbers::pi, 0.25 * std::numbers::pi, 0.0, 1.0);
        const auto lam = pt_eigenvalues(state);
        const double s = std::sin(0.25 * std::numbers::pi);
        CHECK(lam[0] == RelApprox(0.5 * s).epsilon(1e-12));
        CHECK(lam[1] == RelApprox(-0.5 * s).epsilon(1e-12));
        CHECK(lam[2] == RelApprox(0.5 + 0.5 * s).epsilon(1e-12)); // cos(pi/4) = sin(pi/4)
        CHECK(lam[3] == RelApprox(0.5 - 0.5 * s).epsilon(1e-12));

        auto closed = lam;
        auto numeric = hermitian4_eigenvalues(partial_transpose_second(density_matrix(state)));
        std::sort(closed.begin(), closed.end());
        for (int k = 0; k < 4; ++k) {
            CHECK(closed[k] == RelApprox(numeric[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("partial-transpose eigenvalues match the numeric oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> rate(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto state = make_state(phase(rng), phase(rng), rate(rng), 1.0);
        auto closed = pt_eigenvalues(state);
        const double trace_sum = closed[0] + closed[1] + closed[2] + closed[3];
        CHECK(trace_sum == RelApprox(1.0).epsilon(1e-12));

        std::sort(closed.begin(), closed.end());
        const auto numeric =
            hermitian4_eigenvalues(partial_transpose_second(density_matrix(state)));
        for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(closed[k] - numeric[k]));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("witness expectation") {
    SUBCASE("gamma = 0 parallel point") {
        const auto w = witness_expectation(
            make_state(-0.01, -0.01, 0.0, 1.0, Configuration::parallel));
        CHECK(w == RelApprox(-0.5 * std::abs(std::sin(-0.01))).epsilon(1e-12));
    }
    SUBCASE("fully decohered state witnesses nothing") {
        const auto w = witness_expectation(make_state(-0.3, -0.3, 800.0, 1.0));
        CHECK(w == RelApprox(0.25).epsilon(1e-15));
    }
    SUBCASE("decoherence against a -0.02 phase sum") {
        const auto w = witness_expectation(
            make_state(-0.01, -0.01, 0.009, 1.0, Configuration::parallel));
        CHECK(w == RelApprox(-4.953773972e-4).epsilon(1e-8));
        // small-time form (gamma - |omega_ent|) tau / 2 = -5e-4 agrees to O(tau^2)
        CHECK(std::abs(w - (-5e-4)) < 1e-5);
    }
    SUBCASE("branch selection by configuration, min across branches otherwise") {
        const auto lam = pt_eigenvalues(make_state(0.2, 0.1, 0.05, 1.0));
        CHECK(witness_expectation(make_state(0.2, 0.1, 0.05, 1.0, Configuration::parallel)) ==
              lam[0]);
        CHECK(witness_expectation(make_state(0.2, 0.1, 0.05, 1.0, Configuration::linear)) ==
              lam[1]);
        CHECK(witness_expectation(make_state(0.2, 0.1, 0.05, 1.0)) ==
              std::min(lam[0], lam[1]));
    }
    SUBCASE("monotonically non-decreasing in gamma") {
        double prev = -1.0;
        for (double gamma = 0.0; gamma <= 2.0; gamma += 0.05) {
            const auto w = witness_expectation(
                make_state(-0.05, -0.05, gamma, 1.0, Configuration::parallel));
            CHECK(w >= prev - 1e-15);
            prev = w;
        }
    }
}

TEST_CASE("linearized witness expectation") {
    CHECK(witness_expectation_linearized(0.01, 0.01, 1.0) == 0.0);
    CHECK(witness_expectation_linearized(0.01, 0.02, 1.0) == RelApprox(-0.005));
    CHECK(witness_expectation_linearized(0.01, -0.02, 1.0) == RelApprox(-0.005));
    CHECK_THROWS_AS(witness_expectation_linearized(0.01, 0.02, -1.0), std::invalid_argument);
}

TEST_CASE("linearized witness error shrinks quadratically in tau") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gamma_dist(0.08, 0.15);
    std::uniform_real_distribution<double> omega_dist(-0.05, -0.02);
    const std::array<double, 3> taus = {0.1, 0.05, 0.025};

    for (int i = 0; i < 50; ++i) {
        const double gamma = gamma_dist(rng);
        const double omega = omega_dist(rng);
        std::array<double, 3> err{};
        for (int k = 0; k < 3; ++k) {
            const double tau = taus[k];
            const auto state =
                make_state(omega * tau, omega * tau, gamma, tau, Configuration::parallel);
            err[k] = std::abs(witness_expectation(state) -
                              witness_expectation_linearized(gamma, omega, tau));
            CHECK(err[k] > 1e-14); // else the order fit is meaningless
        }
        // least-squares slope of log(err) vs log(tau)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = 0; k < 3; ++k) {
            const double x = std::log(taus[k]);
            const double y = std::log(err[k]);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        CHECK(slope == RelApprox(2.0).epsilon(0.05));

        // the fitted quadratic coefficient is stable over the tau ladder
        const double c_hi = err[0] / (taus[0] * taus[0]);
        const double c_lo = err[2] / (taus[2] * taus[2]);
        CHECK(std::max(c_hi, c_lo) / std::min(c_hi, c_lo) < 1.15);
    }
}

TEST_CASE("pauli expansion of the witness") {
    SUBCASE("pure product state boundary") {
        CHECK(witness_via_pauli_expansion(
                  make_state(0.0, 0.0, 0.0, 1.0, Configuration::parallel)) == 0.0);
    }
    SUBCASE("branch patterns differ only in the Im-term signs") {
        const auto rho = density_matrix(make_state(0.4, -0.9, 0.3, 1.0));
        const double plus = pauli_witness_trace(rho, true);
        const double minus = pauli_witness_trace(rho, false);
        const double re_part =
            rho.trace() - 2.0 * rho.at(0, 3).real() - 2.0 * rho.at(1, 2).real();
        const double im_part = -2.0 * rho.at(0, 1).imag() - 2.0 * rho.at(0, 2).imag() +
                               2.0 * rho.at(1, 3).imag() + 2.0 * rho.at(2, 3).imag();
        CHECK(plus == RelApprox(re_part + im_part).epsilon(1e-14));
        CHECK(minus == RelApprox(re_part - im_part).epsilon(1e-14));
    }
    SUBCASE("equals 4x the witness expectation on the equal-phase family") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
        std::uniform_real_distribution<double> rate(0.0, 3.0);
        for (int i = 0; i < 1000; ++i) {
            const double phi = phase(rng);
            const auto cfg = phi <= 0.0 ? Configuration::parallel : Configuration::linear;
            const auto state = make_state(phi, phi, rate(rng), 1.0, cfg);
            CHECK(witness_via_pauli_expansion(state) ==
                  RelApprox(4.0 * witness_expectation(state)).epsilon(1e-12));
        }
    }
    SUBCASE("matches the closed-form trace for arbitrary phases") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
        std::uniform_real_distribution<double> rate(0.0, 3.0);
        for (int i = 0; i < 1000; ++i) {
            const double phi1 = phase(rng);
            const double phi2 = phase(rng);
            const double gt = rate(rng);
            const auto rho = density_matrix(make_state(phi1, phi2, gt, 1.0));
            const double damp = std::exp(-gt);
            for (bool plus : {true, false}) {
                const double sign = plus ? 1.0 : -1.0;
                const double closed =
                    1.0 - damp * (-sign * (std::sin(phi1) + std::sin(phi2)) +
                                  0.5 * damp * (1.0 + std::cos(phi2 - phi1)));
                CHECK(pauli_witness_trace(rho, plus) ==
                      RelApprox(closed).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("witness state validation") {
    PhasePair p;
    CHECK_THROWS_AS(WitnessState(p, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WitnessState(p, 0.1, -1.0), std::invalid_argument);
}
