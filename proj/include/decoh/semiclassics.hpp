#pragma once

#include "decoh/types.hpp"

#include <functional>

// Model-independent semiclassical toolkit: induced forces, the linearized
// Gaussian decoherence factor, classical trajectories, the local oscillator
// frequency and the macroscopic distinguishability predicate.

namespace decoh::semi {

using Potential = std::function<double(double)>;

// A pair of adiabatic branch potentials over a common position interval.
struct PotentialPair {
    Potential v_m, v_n;
    std::string label_m, label_n;
};

// Sampled classical phase-space path.
struct ClassicalPath {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> momenta;
};

// -dV/dx by central difference, step h = max(1e-6, 1e-6 |x|); O(h^2) truncation.
double induced_force(const Potential& v, double x);

// |F| of the linearized factor: exp(-delta_f^2 t^2 / (4 sigma^2)) for the
// Gaussian packet <x|phi> ~ exp(-sigma^2 x^2 / 2); sigma is the momentum-space
// width, sigma = 1/a for a position-space width a.
double linearized_decoherence_factor(double sigma, double delta_f, double t);

// Integrates xdot = p/M, pdot = -V'(x) with classical RK4 at fixed dt.
// Throws if a step produces a non-finite state.
ClassicalPath classical_trajectory(const Potential& v, const GaussianPacket& packet,
                                   double t_final, double dt);

// omega = sqrt(V''(x_c)/M) with V'' by central second difference
// (step 1e-4 max(1,|x|)); throws on negative curvature.
double local_frequency(const Potential& v, double x_c, double mass);

// Packets count as macroscopically distinguishable when
// width_1 + width_2 <= |x1 - x2| (boundary inclusive).
bool distinguishable(double width_1, double width_2, double x1, double x2);

}  // namespace decoh::semi
