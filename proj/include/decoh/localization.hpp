#pragma once

#include "decoh/types.hpp"

// Macroscopic object of N two-level internal particles, h_j = omega_j sz + f_j(x) sx
// with f_j(x) = g_j (x + l_j): single-particle S-matrices, factorized decoherence
// factor, spectral localization rate, two-packet and plane-wave density sections.

namespace decoh::loc {

enum class CouplingMode { exact, weak };

struct LocalizationParams {
    std::vector<double> omegas;     // level splittings, > 0
    std::vector<double> couplings;  // g_j in f_j(x) = g_j (x + l_j)
    std::vector<double> offsets;    // per-particle positions l_j

    std::size_t size() const { return omegas.size(); }
    void validate() const;

    static LocalizationParams uniform(std::size_t n, double omega, double g);
};

// Continuum spectral model rho(omega) = 4 gamma / (pi g^2) over [band_min, band_max].
struct SpectralModel {
    double gamma = 0.0;
    double coupling = 1.0;  // g
    double band_min = 0.0;
    double band_max = 0.0;

    void validate() const;
};

// Superposition of two Gaussian packets of width d centered at +-a.
struct TwoPacketState {
    double separation = 1.0;  // a
    double width = 0.25;      // d

    void validate() const {
        if (!(width > 0.0)) throw std::invalid_argument("TwoPacketState: width must be > 0");
    }
};

// S_j(t) = exp(-i h_j t), h_j = omega_j sz + f_j sx; unitary, basis (|e>, |g>).
Eigen::Matrix2cd single_s_matrix(double omega_j, double f_j, double t);

// <g| S^dag(x';t) S(x;t) |g> for f_j(x) = g_j x.
Complex single_decoherence_factor(double omega_j, double g_j, double x, double x_prime, double t);

// Second-order weak-coupling expansion of the factor above, validated against
// the 2x2 matrix product (the printed low-order form drops the adiabatic
// energy-shift phase and carries a sign slip; this one is the oracle-faithful
// expansion, difference O(theta^4)).
Complex weak_coupling_factor(double omega_j, double g_j, double x, double x_prime, double t);

// Product over particles, either exact per-particle matrix factors or the
// weak-mode closed form exp{-(x-x')^2 sum g^2/(2w^2) sin^2(wt) + i phase}.
Complex total_decoherence_factor(const LocalizationParams& params, double x, double x_prime,
                                 double t, CouplingMode mode);

// R(t) = integral over the band of rho(w) g^2/(2w^2) sin^2(wt) dw by adaptive
// Simpson quadrature; R(t)/t -> gamma for a wide band.
double localization_exponent(const SpectralModel& model, double t);

// |rho(x,x',t)|: four-peak sum of Eq-level Gaussians with damping e^{-gamma t (x-x')^2}.
double two_packet_density(const TwoPacketState& state, double gamma, double t, double x,
                          double x_prime);

// Two-plane-wave density rho_0(x,x',t) e^{-gamma t (x-x')^2}; the diagonal
// x = x' equals (1/2pi)(1 + cos[(k1^2-k2^2)t/2m + (k2-k1)x]) independent of gamma.
Complex plane_wave_density(double k1, double k2, double mass, double gamma, double t, double x,
                           double x_prime);

// s(t) = sum_j sin(2 omega_j t) / (pi omega_j^2).
double phase_function(const LocalizationParams& params, double t);

}  // namespace decoh::loc
