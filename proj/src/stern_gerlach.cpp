#include "decoh/stern_gerlach.hpp"

#include <cmath>

namespace decoh::sg {

void SGParams::validate() const {
    if (!(mass > 0.0) || !(width > 0.0))
        throw std::invalid_argument("SGParams: mass and width must be > 0");
    if (std::abs(force - gyro * field_gradient) > 1e-12 * std::max(1.0, std::abs(force)))
        throw std::invalid_argument("SGParams: force != gyro * field_gradient");
    if (tilt < 0.0 || tilt > M_PI) throw std::invalid_argument("SGParams: tilt outside [0, pi]");
}

SGParams SGParams::make(double mass, double width, double force, double helix_k, double tilt) {
    SGParams p;
    p.mass = mass;
    p.width = width;
    p.force = force;
    p.helix_k = helix_k;
    p.tilt = tilt;
    p.gyro = force;
    p.field_gradient = 1.0;
    p.validate();
    return p;
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> adiabatic_spinors(double x, double theta, double k) {
    const Complex ph = std::exp(-I * k * x);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    Eigen::Vector2cd chi_plus, chi_minus;
    chi_plus << c * ph, Complex(s, 0.0);
    chi_minus << s * ph, Complex(-c, 0.0);
    return {chi_plus, chi_minus};
}

double adiabaticity_ratio(const SGParams& params, double xdot, double x, double b_of_x) {
    (void)x;
    if (!(b_of_x > 0.0))
        throw std::domain_error("adiabaticity_ratio: zero field, level crossing");
    return std::abs(xdot * params.helix_k * std::sin(params.tilt) / (params.gyro * b_of_x));
}

std::pair<double, double> induced_gauge(double theta, double k) {
    return {0.5 * k * (1.0 + std::cos(theta)), 0.5 * k * (1.0 - std::cos(theta))};
}

WeiNormanParams wei_norman_params(double mass, double gauge_a, double force, double t) {
    if (!(mass > 0.0)) throw std::invalid_argument("wei_norman_params: mass <= 0");
    WeiNormanParams w;
    const double M = mass, A = gauge_a, f = force;
    w.alpha = -I * t / (2.0 * M);
    w.beta = -I * f * t * t / (2.0 * M) + I * A * t / M;
    w.gamma = -I * t * f;
    w.mu = -I * f * f * t * t * t / (6.0 * M) + I * A * f * t * t / (2.0 * M);
    return w;
}

double trajectory(const SGParams& params, Branch branch, double t) {
    const auto [ap, am] = induced_gauge(params.tilt, params.helix_k);
    const double sgn = branch == Branch::plus ? 1.0 : -1.0;
    const double A = branch == Branch::plus ? ap : am;
    return -sgn * 0.5 * params.force / params.mass * t * t - A * t / params.mass;
}

Complex branch_wavefunction(const SGParams& params, Branch branch, double t, double x) {
    params.validate();
    const double a = params.width, M = params.mass, f = params.force;
    const auto [ap, am] = induced_gauge(params.tilt, params.helix_k);
    const double sgn = branch == Branch::plus ? 1.0 : -1.0;
    const double A = branch == Branch::plus ? ap : am;
    const Complex w = a * a + I * t / (2.0 * M);
    const double omega_ph = f * f * t * t * t / (6.0 * M) + 0.5 * f * t * t * A;
    const double xc = trajectory(params, branch, t);
    const Complex pref = std::pow(a * a / (2.0 * M_PI * M_PI * M_PI), 0.25) *
                         std::sqrt(Complex(M_PI, 0.0) / w);
    return pref * std::exp(-I * omega_ph - sgn * I * f * t * x) *
           std::exp(-(x - xc) * (x - xc) / (4.0 * w));
}

double decoherence_factor(const SGParams& params, double t) {
    if (t < 0.0) throw std::invalid_argument("decoherence_factor: t < 0");
    const double a = params.width, M = params.mass, f = params.force;
    const double drift = (f * t * t - params.helix_k * std::cos(params.tilt) * t) / M;
    return std::exp(-a * a * f * f * t * t - drift * drift / (8.0 * a * a));
}

double decoherence_factor_exact(const SGParams& params, double t) {
    if (t < 0.0) throw std::invalid_argument("decoherence_factor_exact: t < 0");
    const double a = params.width, M = params.mass, f = params.force;
    const double sep = f * t * t - params.helix_k * std::cos(params.tilt) * t;
    return std::exp(-2.0 * a * a * f * f * t * t - sep * sep / (8.0 * a * a * M * M));
}

double decoherence_time(const SGParams& params) {
    if (params.force == 0.0)
        throw std::domain_error("decoherence_time: f = 0, no decoherence");
    return std::sqrt(2.0 * std::sqrt(2.0) * params.mass * params.width / std::abs(params.force));
}

double distinguishability_ratio(const SGParams& params, double t) {
    const double a = params.width, M = params.mass;
    const double lhs = params.force * t * t - params.helix_k * std::cos(params.tilt) * t;
    const double rhs = a * std::sqrt(M * M + t * t / (4.0 * a * a));
    return lhs / rhs;
}

bool distinguishability_condition(const SGParams& params, double t) {
    if (t < 0.0) throw std::invalid_argument("distinguishability_condition: t < 0");
    return distinguishability_ratio(params, t) > 1.0;
}

}  // namespace decoh::sg
