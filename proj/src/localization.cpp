#include "decoh/localization.hpp"

#include <cmath>

namespace decoh::loc {

void LocalizationParams::validate() const {
    if (couplings.size() != omegas.size() || offsets.size() != omegas.size())
        throw std::invalid_argument("LocalizationParams: list length mismatch");
    for (double w : omegas)
        if (!(w > 0.0)) throw std::invalid_argument("LocalizationParams: omega_j must be > 0");
}

LocalizationParams LocalizationParams::uniform(std::size_t n, double omega, double g) {
    LocalizationParams p;
    p.omegas.assign(n, omega);
    p.couplings.assign(n, g);
    p.offsets.assign(n, 0.0);
    p.validate();
    return p;
}

void SpectralModel::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("SpectralModel: gamma must be > 0");
    if (!(0.0 < band_min && band_min < band_max))
        throw std::invalid_argument("SpectralModel: need 0 < band_min < band_max");
}

Eigen::Matrix2cd single_s_matrix(double omega_j, double f_j, double t) {
    if (!(omega_j > 0.0)) throw std::invalid_argument("single_s_matrix: omega_j must be > 0");
    // h = omega sz + f sx = Om (cos(th) sz + sin(th) sx); exp(-i h t) in closed form
    const double Om = std::hypot(omega_j, f_j);
    const double ct = omega_j / Om, st = f_j / Om;
    const double c = std::cos(Om * t), s = std::sin(Om * t);
    Eigen::Matrix2cd m;
    m << Complex(c, -s * ct), Complex(0.0, -s * st), Complex(0.0, -s * st), Complex(c, s * ct);
    return m;
}

Complex single_decoherence_factor(double omega_j, double g_j, double x, double x_prime, double t) {
    const Eigen::Matrix2cd s = single_s_matrix(omega_j, g_j * x, t);
    const Eigen::Matrix2cd sp = single_s_matrix(omega_j, g_j * x_prime, t);
    const Eigen::Vector2cd ground(0.0, 1.0);
    return ground.dot(sp.adjoint() * s * ground);
}

Complex weak_coupling_factor(double omega_j, double g_j, double x, double x_prime, double t) {
    if (!(omega_j > 0.0)) throw std::invalid_argument("weak_coupling_factor: omega_j must be > 0");
    const double w = omega_j, g2 = g_j * g_j;
    const double dx = x - x_prime;
    const double s = std::sin(w * t);
    const double re = 1.0 - dx * dx * g2 / (2.0 * w * w) * s * s;
    // adiabatic level-shift phase plus the oscillatory piece; validated against
    // the exact 2x2 product, residual O((g x / w)^4)
    const double im =
        g2 * (x * x - x_prime * x_prime) / (2.0 * w) * (t - std::sin(2.0 * w * t) / (2.0 * w));
    return {re, im};
}

Complex total_decoherence_factor(const LocalizationParams& params, double x, double x_prime,
                                 double t, CouplingMode mode) {
    params.validate();
    if (mode == CouplingMode::exact) {
        Complex f(1.0, 0.0);
        for (std::size_t j = 0; j < params.size(); ++j)
            f *= single_decoherence_factor(params.omegas[j], params.couplings[j],
                                           x + params.offsets[j], x_prime + params.offsets[j], t);
        return f;
    }
    double re_exp = 0.0, im_exp = 0.0;
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double w = params.omegas[j], g2 = params.couplings[j] * params.couplings[j];
        const double xj = x + params.offsets[j], xpj = x_prime + params.offsets[j];
        const double s = std::sin(w * t);
        re_exp -= (xj - xpj) * (xj - xpj) * g2 / (2.0 * w * w) * s * s;
        im_exp += g2 * (xj * xj - xpj * xpj) / (2.0 * w) * (t - std::sin(2.0 * w * t) / (2.0 * w));
    }
    return std::exp(Complex(re_exp, im_exp));
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    // n must be even
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

double localization_exponent(const SpectralModel& model, double t) {
    model.validate();
    if (t < 0.0) throw std::invalid_argument("localization_exponent: t < 0");
    if (t == 0.0) return 0.0;
    // R(t) = (2 gamma / pi) int sin^2(w t)/w^2 dw over the band
    auto integrand = [&](double w) {
        const double s = std::sin(w * t);
        return s * s / (w * w);
    };
    // refine until converged; the integrand oscillates with period pi/t
    double prev = 0.0;
    for (int n = 1 << 10; n <= (1 << 22); n <<= 1) {
        const double val = simpson(integrand, model.band_min, model.band_max, n);
        if (n > (1 << 10) && std::abs(val - prev) <= 1e-10 * std::max(1.0, std::abs(val)))
            return 2.0 * model.gamma / M_PI * val;
        prev = val;
    }
    throw std::runtime_error("localization_exponent: quadrature did not converge");
}

double two_packet_density(const TwoPacketState& state, double gamma, double t, double x,
                          double x_prime) {
    state.validate();
    if (gamma < 0.0 || t < 0.0)
        throw std::invalid_argument("two_packet_density: gamma and t must be >= 0");
    const double a = state.separation, d = state.width;
    const double damp = std::exp(-gamma * t * (x - x_prime) * (x - x_prime));
    const double pref = 1.0 / std::sqrt(8.0 * M_PI * d * d);
    double peaks = 0.0;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            const double ck = k ? a : -a, cl = l ? a : -a;
            peaks += std::exp(-(x - ck) * (x - ck) / (4.0 * d * d) -
                              (x_prime - cl) * (x_prime - cl) / (4.0 * d * d));
        }
    return pref * damp * peaks;
}

Complex plane_wave_density(double k1, double k2, double mass, double gamma, double t, double x,
                           double x_prime) {
    if (!(mass > 0.0)) throw std::invalid_argument("plane_wave_density: mass must be > 0");
    const double kin = (k1 * k1 - k2 * k2) * t / (2.0 * mass);
    const Complex rho0 = (std::exp(I * k1 * (x - x_prime)) + std::exp(I * k2 * (x - x_prime)) +
                          std::exp(I * (kin + k2 * x - k1 * x_prime)) +
                          std::exp(I * (-kin + k1 * x - k2 * x_prime))) /
                         (4.0 * M_PI);
    const double dx = x - x_prime;
    return rho0 * std::exp(-gamma * t * dx * dx);
}

double phase_function(const LocalizationParams& params, double t) {
    params.validate();
    double s = 0.0;
    for (double w : params.omegas) s += std::sin(2.0 * w * t) / (M_PI * w * w);
    return s;
}

}  // namespace decoh::loc
