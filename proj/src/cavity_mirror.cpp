#include "decoh/cavity_mirror.hpp"

#include "decoh/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace decoh::cavity {

void CavityParams::validate() const {
    if (!(omega > 0.0) || !(Omega > 0.0) || !(M > 0.0))
        throw std::invalid_argument("CavityParams: omega, Omega, M must be > 0");
    if (n_trunc < 8) throw std::invalid_argument("CavityParams: n_trunc must be >= 8");
}

int truncation_for(double alpha_abs, int n) {
    const double byalpha = 4.0 * alpha_abs * alpha_abs + 10.0 * alpha_abs + 20.0;
    return static_cast<int>(std::max(byalpha, n + 20.0));
}

ComplexVector coherent_state(Complex alpha, int n_trunc) {
    ComplexVector v(n_trunc);
    // amplitudes alpha^n/sqrt(n!) e^{-|alpha|^2/2} by stable recursion
    Complex amp = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < n_trunc; ++n) {
        v(n) = amp;
        amp *= alpha / std::sqrt(n + 1.0);
    }
    return v;
}

ComplexMatrix displacement_matrix(Complex alpha, int n_trunc) {
    if (n_trunc < 1) throw std::invalid_argument("displacement_matrix: n_trunc < 1");
    if (std::norm(alpha) > 0.25 * n_trunc)
        throw std::invalid_argument("displacement_matrix: |alpha|^2 > n_trunc/4 guard");
    // generator G = alpha b^dag - conj(alpha) b is anti-Hermitian; iG is Hermitian
    ComplexMatrix iG = ComplexMatrix::Zero(n_trunc, n_trunc);
    for (int n = 1; n < n_trunc; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        iG(n, n - 1) = I * alpha * s;              // alpha b^dag
        iG(n - 1, n) = -I * std::conj(alpha) * s;  // -conj(alpha) b
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(iG);
    ComplexVector ph(n_trunc);
    for (int k = 0; k < n_trunc; ++k) ph(k) = std::exp(-I * es.eigenvalues()(k));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexVector adiabatic_photon_state(const CavityParams& params, int n, double x) {
    params.validate();
    if (n < 0) throw std::invalid_argument("adiabatic_photon_state: n < 0");
    const double lam = params.lambda(x);
    if (params.n_trunc < truncation_for(std::abs(lam), n))
        throw std::invalid_argument("adiabatic_photon_state: truncation margin violated");
    ComplexVector fock = ComplexVector::Zero(params.n_trunc);
    fock(n) = 1.0;
    return displacement_matrix(Complex(-lam, 0.0), params.n_trunc) * fock;
}

double adiabatic_ratio(const CavityParams& params, int n, double xdot) {
    return std::abs(n * params.g * params.f_drive * xdot) /
           (params.omega * params.omega * params.omega);
}

double fock_argument(const CavityParams& params, int k, int l, double t) {
    const double mu = params.mu_c();
    const double s = std::sin(0.5 * params.Omega * t);
    const double d = static_cast<double>(l - k);
    return 4.0 * d * d * mu * mu * s * s / (params.Omega * params.Omega);
}

double overlap_coherent(const CavityParams& params, int m, int n, double t) {
    const double mu = params.mu_c();
    const double s = std::sin(0.5 * params.Omega * t);
    const double d = static_cast<double>(n - m);
    return std::exp(-d * d * 2.0 * mu * mu * s * s / (params.Omega * params.Omega));
}

double overlap_coherent_limit(const CavityParams& params, int m, int n, double t) {
    const double mu = params.mu_c();
    const double d = static_cast<double>(n - m);
    return std::exp(-0.5 * d * d * mu * mu * t * t);
}

double overlap_fock(const CavityParams& params, int k, int l, int n_mirror, double t) {
    if (n_mirror < 0) throw std::invalid_argument("overlap_fock: n_mirror < 0");
    if (n_mirror > params.n_trunc)
        throw std::invalid_argument("overlap_fock: n_mirror beyond truncation guard");
    const double z = fock_argument(params, k, l, t);
    return std::exp(-0.5 * z) * std::abs(specfun::laguerre(n_mirror, z));
}

double overlap_fock_printed(const CavityParams& params, int k, int l, int n_mirror, double t) {
    const double z = 0.25 * fock_argument(params, k, l, t);  // argument as printed
    return std::exp(-0.5 * z) * std::abs(specfun::laguerre(n_mirror, z));
}

double overlap_fock_limit(const CavityParams& params, int k, int l, int n_mirror, double t) {
    if (n_mirror < 1) throw std::invalid_argument("overlap_fock_limit: n_mirror must be >= 1");
    const double z = fock_argument(params, k, l, t);
    return std::exp(-0.5 * z) * specfun::bessel_j0(2.0 * std::sqrt(n_mirror * z));
}

ComplexVector mirror_branch(const CavityParams& params, int n, Complex alpha0, double t) {
    params.validate();
    const Complex alpha_n = params.alpha_n(n, t);
    if (truncation_for(std::abs(alpha0) + std::abs(alpha_n), 0) > params.n_trunc)
        throw std::invalid_argument("mirror_branch: truncation guard violated");
    return displacement_matrix(alpha_n, params.n_trunc) * coherent_state(alpha0, params.n_trunc);
}

}  // namespace decoh::cavity
