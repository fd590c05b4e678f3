#pragma once

#include "decoh/types.hpp"

#include <utility>

// Spin-1/2 beam in a helical magnetic field B(x) n(x),
// n(x) = (sin(theta) cos(kx), sin(theta) sin(kx), cos(theta)), B(x) ~ dB/dx(0) x.
// Adiabatic spinor branches, induced gauge potentials, Wei-Norman branch wave
// functions, trajectories and the decoherence factor / time.

namespace decoh::sg {

enum class Branch { plus, minus };

struct SGParams {
    double mass = 1.0;            // M
    double width = 1.0;           // a, initial packet width
    double force = 0.0;           // f = gyro * field_gradient
    double helix_k = 0.0;         // k
    double tilt = 0.0;            // theta in [0, pi]
    double gyro = 0.0;            // mu
    double field_gradient = 0.0;  // dB/dx at x=0

    void validate() const;  // M>0, a>0, f = gyro*field_gradient (1e-12)

    // Convenience constructor with gyro = force, field_gradient = 1.
    static SGParams make(double mass, double width, double force, double helix_k, double tilt);
};

// Time-dependent Wei-Norman factorization parameters for
// U(t) = exp(alpha p^2) exp(beta p) exp(gamma x) exp(mu).
struct WeiNormanParams {
    Complex alpha, beta, gamma, mu;
};

// |chi+[x]> = (cos(t/2) e^{-ikx}, sin(t/2)), |chi-[x]> = (sin(t/2) e^{-ikx}, -cos(t/2)).
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> adiabatic_spinors(double x, double theta, double k);

// |xdot k sin(theta) / (mu B(x))|; throws on zero field (level crossing).
double adiabaticity_ratio(const SGParams& params, double xdot, double x, double b_of_x);

// (A+, A-) = (k(1+cos theta)/2, k(1-cos theta)/2).
std::pair<double, double> induced_gauge(double theta, double k);

// alpha = -it/2M, beta = -ift^2/2M + iAt/M, gamma = -itf,
// mu = -if^2t^3/6M + iAft^2/2M.
WeiNormanParams wei_norman_params(double mass, double gauge_a, double force, double t);

// x_{+-c}(t) = -+ (f/2M) t^2 - A_{+-} t / M.
double trajectory(const SGParams& params, Branch branch, double t);

// <x|D_{+-}(t)>: complex-width Gaussian on the branch trajectory with phase
// Omega_{+-}(t) = f^2 t^3 / 6M + f t^2 A_{+-}/2 and momentum phase -+ f t x.
Complex branch_wavefunction(const SGParams& params, Branch branch, double t, double x);

// The printed closed form: exp[-a^2 f^2 t^2 - (f t^2/M - k cos(theta) t/M)^2/(8a^2)].
// Its first exponent term is half the exact overlap's; see decoherence_factor_exact.
double decoherence_factor(const SGParams& params, double t);

// Exact |<D_+(t)|D_-(t)>| of the branch wave functions (Wei-Norman computation
// in momentum representation): exp[-2 a^2 f^2 t^2 - (f t^2 - k cos(theta) t)^2/(8 a^2 M^2)].
double decoherence_factor_exact(const SGParams& params, double t);

// tau_d = sqrt(2 sqrt(2) M a / f), the e^{-1} time of the long-time law
// F ~ exp[-f^2 t^4 / (8 a^2 M^2)]; throws when f = 0.
double decoherence_time(const SGParams& params);

// Strict comparison f t^2 - k cos(theta) t > a sqrt(M^2 + t^2/(4a^2)) with
// margin factor 1; callers wanting a much-greater-than margin scale it themselves.
bool distinguishability_condition(const SGParams& params, double t);

// Ratio of the two sides of the distinguishability comparison (for reporting).
double distinguishability_ratio(const SGParams& params, double t);

}  // namespace decoh::sg
