#include "decoh/semiclassics.hpp"

#include <cmath>
#include <limits>

namespace decoh::semi {

double induced_force(const Potential& v, double x) {
    const double h = std::max(1e-6, 1e-6 * std::abs(x));
    const double vp = v(x + h), vm = v(x - h);
    if (!std::isfinite(vp) || !std::isfinite(vm))
        throw std::invalid_argument("induced_force: potential not finite near x");
    return -(vp - vm) / (2.0 * h);
}

double linearized_decoherence_factor(double sigma, double delta_f, double t) {
    if (!(sigma > 0.0)) throw std::invalid_argument("linearized_decoherence_factor: sigma <= 0");
    const double q = delta_f * t / (2.0 * sigma);
    return std::exp(-q * q);
}

ClassicalPath classical_trajectory(const Potential& v, const GaussianPacket& packet,
                                   double t_final, double dt) {
    packet.validate();
    if (!(dt > 0.0) || t_final < dt)
        throw std::invalid_argument("classical_trajectory: need dt > 0 and t_final >= dt");
    const double m = packet.mass;
    auto accel = [&](double x) { return induced_force(v, x) / m; };

    ClassicalPath path;
    const long full_steps = static_cast<long>(t_final / dt);
    const double remainder = t_final - full_steps * dt;
    path.times.reserve(full_steps + 2);
    path.positions.reserve(full_steps + 2);
    path.momenta.reserve(full_steps + 2);

    double x = packet.center, p = packet.momentum;
    path.times.push_back(0.0);
    path.positions.push_back(x);
    path.momenta.push_back(p);
    auto step = [&](double h, double t_now) {
        const double k1x = p / m, k1p = m * accel(x);
        const double k2x = (p + 0.5 * h * k1p) / m, k2p = m * accel(x + 0.5 * h * k1x);
        const double k3x = (p + 0.5 * h * k2p) / m, k3p = m * accel(x + 0.5 * h * k2x);
        const double k4x = (p + h * k3p) / m, k4p = m * accel(x + h * k3x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (!std::isfinite(x) || !std::isfinite(p))
            throw std::runtime_error("classical_trajectory: non-finite state at t = " +
                                     std::to_string(t_now));
        path.times.push_back(t_now);
        path.positions.push_back(x);
        path.momenta.push_back(p);
    };
    for (long s = 1; s <= full_steps; ++s) step(dt, s * dt);
    // land exactly on t_final with one short step
    if (remainder > 1e-12 * dt) step(remainder, t_final);
    return path;
}

double local_frequency(const Potential& v, double x_c, double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("local_frequency: mass <= 0");
    const double h = 1e-4 * std::max(1.0, std::abs(x_c));
    const double vp = v(x_c + h), v0 = v(x_c), vm = v(x_c - h);
    const double vpp = (vp - 2.0 * v0 + vm) / (h * h);
    // curvature below the rounding floor of the stencil counts as flat
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(vp) + 2.0 * std::abs(v0) + std::abs(vm)) / (h * h);
    if (vpp < -floor)
        throw std::domain_error("local_frequency: negative curvature, no local oscillator");
    return std::sqrt(std::max(vpp, 0.0) / mass);
}

bool distinguishable(double width_1, double width_2, double x1, double x2) {
    if (!(width_1 > 0.0) || !(width_2 > 0.0))
        throw std::invalid_argument("distinguishable: widths must be > 0");
    return width_1 + width_2 <= std::abs(x1 - x2);
}

}  // namespace decoh::semi
