#pragma once

#include "decoh/types.hpp"

// Driven cavity mode adiabatically coupled to a mirror oscillator.
// Adiabatic photon states are displaced Fock states; mirror branches evolve by
// displacement operators, giving coherent-state and Fock-state decoherence
// factors with Gaussian/Laguerre/Bessel closed forms.

namespace decoh::cavity {

struct CavityParams {
    double omega = 1.0;    // cavity frequency
    double g = 0.0;        // optomechanical coupling
    double f_drive = 0.0;  // classical source amplitude
    double Omega = 1.0;    // mirror frequency
    double M = 1.0;        // mirror mass
    int n_trunc = 32;      // Fock truncation

    void validate() const;

    double mu_c() const { return g / std::sqrt(2.0 * M * Omega); }
    double lambda(double x) const { return f_drive / (omega + g * x); }
    double g_n(int n) const { return mu_c() * (n - f_drive * f_drive / (omega * omega)); }
    Complex alpha_n(int n, double t) const {
        return -g_n(n) * (std::exp(I * Omega * t) - 1.0) / Omega;
    }
};

// Truncated coherent state |alpha| (normalized on the retained space).
ComplexVector coherent_state(Complex alpha, int n_trunc);

// exp(alpha b^dag - conj(alpha) b) on the truncated space via eigendecomposition
// of the Hermitian generator i(alpha b^dag - conj(alpha) b).
// Guard: |alpha|^2 <= n_trunc/4.
ComplexMatrix displacement_matrix(Complex alpha, int n_trunc);

// Displaced Fock state D(-lambda(x))|n>, the eigenvector of the truncated
// (omega+gx) a^dag a + f (a^dag + a) with eigenvalue n(omega+gx) - f^2/(omega+gx).
ComplexVector adiabatic_photon_state(const CavityParams& params, int n, double x);

// |n g f xdot| / omega^3, the order-of-magnitude adiabatic condition.
double adiabatic_ratio(const CavityParams& params, int n, double xdot);

// Displaced-Fock overlap argument z = |alpha_l(t) - alpha_k(t)|^2
//   = 4 (l-k)^2 mu_c^2 sin^2(Omega t / 2) / Omega^2.
double fock_argument(const CavityParams& params, int k, int l, double t);

// |<D_m(t)|D_n(t)>| = exp(-(n-m)^2 (2 mu_c^2/Omega^2) sin^2(Omega t/2)).
double overlap_coherent(const CavityParams& params, int m, int n, double t);

// Omega -> 0 limit at fixed mu_c: exp(-(n-m)^2 mu_c^2 t^2 / 2).
double overlap_coherent_limit(const CavityParams& params, int m, int n, double t);

// Fock-state mirror overlap magnitude e^{-z/2} |L_n(z)| with the exact
// displaced-Fock argument z = fock_argument(k,l,t).
double overlap_fock(const CavityParams& params, int k, int l, int n_mirror, double t);

// The form as printed in the source (argument z/4); kept for comparison only,
// exposed through the CLI --show-paper-form switch.
double overlap_fock_printed(const CavityParams& params, int k, int l, int n_mirror, double t);

// Large-n asymptotic e^{-z/2} J0(2 sqrt(n z)); signed, follows J0's zeros.
double overlap_fock_limit(const CavityParams& params, int k, int l, int n_mirror, double t);

// D[alpha_n(t)] |alpha0> on the truncated space.
ComplexVector mirror_branch(const CavityParams& params, int n, Complex alpha0, double t);

// Truncation size rule used by branch/overlap oracles:
// max(4|alpha|^2 + 10|alpha| + 20, n + 20), capped for reproducibility.
int truncation_for(double alpha_abs, int n);

}  // namespace decoh::cavity
