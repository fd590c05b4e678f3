#include "decoh/large_spin.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace decoh::spin {

double mixing_angle(const LargeSpinParams& params) {
    params.validate();
    return std::atan(params.g / params.omega);
}

namespace {

ComplexMatrix hermitian_exponential(const ComplexMatrix& generator, Complex scale) {
    // exp(scale * G) for Hermitian G via eigendecomposition
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(generator);
    ComplexVector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(scale * es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

BranchEvolver::BranchEvolver(const LargeSpinParams& params) : params_(params) {
    params.validate();
    if (params.j.dim() > 2001)
        throw std::invalid_argument("BranchEvolver: 2j+1 > 2001");
    phi_ = mixing_angle(params);
    const auto ops = specfun::spin_operators(params.j);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.jy);
    jy_eigs_ = es.eigenvalues();
    jy_vecs_ = es.eigenvectors();

    auto rotation = [&](double angle) {
        ComplexVector ph(jy_eigs_.size());
        for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(I * angle * jy_eigs_(i));
        return ComplexMatrix(jy_vecs_ * ph.asDiagonal() * jy_vecs_.adjoint());
    };
    rot_plus_ = rotation(phi_);
    rot_minus_ = rotation(-phi_);

    ComplexVector lowest = ComplexVector::Zero(params.j.dim());
    lowest(params.j.dim() - 1) = 1.0;  // m = -j in the j..-j ordering
    initial_ = rot_plus_ * lowest;     // |j,-j(phi)>
}

ComplexVector BranchEvolver::state(Branch branch, double t) const {
    const ComplexMatrix& undo = branch == Branch::plus ? rot_minus_ : rot_plus_;
    const ComplexMatrix& redo = branch == Branch::plus ? rot_plus_ : rot_minus_;
    ComplexVector v = undo * initial_;
    const double lambda = params_.level_splitting();
    const double jv = params_.j.value();
    for (Eigen::Index r = 0; r < v.size(); ++r)
        v(r) *= std::exp(-I * t * lambda * (jv - r));  // Jz is diagonal m = j..-j
    return redo * v;
}

Complex BranchEvolver::overlap(double t) const {
    return state(Branch::minus, t).dot(state(Branch::plus, t));
}

ComplexVector branch_state(const LargeSpinParams& params, Branch branch, double t) {
    return BranchEvolver(params).state(branch, t);
}

double decoherence_factor_analytic(const LargeSpinParams& params, double t) {
    const double phi = mixing_angle(params);
    const double s2 = std::sin(2.0 * phi);
    const double sh = std::sin(0.5 * params.level_splitting() * t);
    const double base = std::abs(1.0 - s2 * s2 * sh * sh);
    if (base == 0.0) return 0.0;
    return std::exp(params.j.value() * std::log(base));
}

Complex decoherence_factor_numeric(const LargeSpinParams& params, double t) {
    return BranchEvolver(params).overlap(t);
}

std::vector<double> revival_times(const LargeSpinParams& params, int n_max) {
    if (n_max < 0) throw std::invalid_argument("revival_times: n_max < 0");
    std::vector<double> out;
    out.reserve(n_max + 1);
    const double lambda = params.level_splitting();
    for (int n = 0; n <= n_max; ++n) out.push_back(2.0 * M_PI * n / lambda);
    return out;
}

ComplexMatrix coupling_operator(const LargeSpinParams& params, bool* clamped) {
    const auto ops = specfun::spin_operators(params.j);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.jx);
    RealVector f_eigs(es.eigenvalues().size());
    bool any_clamped = false;
    for (Eigen::Index i = 0; i < f_eigs.size(); ++i) {
        const double m = es.eigenvalues()(i);
        const double arg = params.g * params.g * m * m - params.omega_s * params.omega_s;
        if (arg < 0.0) any_clamped = true;
        f_eigs(i) = std::sqrt(std::max(arg, 0.0));
    }
    if (clamped) *clamped = any_clamped;
    return es.eigenvectors() * f_eigs.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

ComplexMatrix full_hamiltonian(const LargeSpinParams& params) {
    const int d = params.j.dim();
    const auto ops = specfun::spin_operators(params.j);
    const ComplexMatrix f = coupling_operator(params);
    ComplexMatrix h = ComplexMatrix::Zero(2 * d, 2 * d);
    // basis |s=+1/2> (x) |m> first block, |s=-1/2> second
    h.topLeftCorner(d, d) = params.omega_s * ComplexMatrix::Identity(d, d) + params.omega * ops.jz;
    h.bottomRightCorner(d, d) =
        -params.omega_s * ComplexMatrix::Identity(d, d) + params.omega * ops.jz;
    h.topRightCorner(d, d) = f;   // sigma_x couples the blocks
    h.bottomLeftCorner(d, d) = f;
    return h;
}

ComplexVector full_initial_state(const LargeSpinParams& params, Complex c_plus, Complex c_minus) {
    const int d = params.j.dim();
    const auto ops = specfun::spin_operators(params.j);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.jx);

    const double phi = mixing_angle(params);
    ComplexVector lowest = ComplexVector::Zero(d);
    lowest(d - 1) = 1.0;
    const ComplexMatrix rot = hermitian_exponential(ops.jy, I * phi);
    const ComplexVector slow0 = rot * lowest;  // |j,-j(phi)>

    ComplexVector psi = ComplexVector::Zero(2 * d);
    for (Eigen::Index s = 0; s < d; ++s) {
        const double m = es.eigenvalues()(s);
        const double f_m =
            std::sqrt(std::max(params.g * params.g * m * m - params.omega_s * params.omega_s, 0.0));
        const double theta = std::atan2(-f_m, params.omega_s);
        const Complex amp = es.eigenvectors().col(s).dot(slow0);  // <m_x|slow0>
        const Complex fast_up = c_plus * std::cos(0.5 * theta) + c_minus * std::sin(0.5 * theta);
        const Complex fast_dn = c_plus * std::sin(0.5 * theta) - c_minus * std::cos(0.5 * theta);
        psi.head(d) += fast_up * amp * es.eigenvectors().col(s);
        psi.tail(d) += fast_dn * amp * es.eigenvectors().col(s);
    }
    return psi;
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> adiabatic_two_level_basis(
    const LargeSpinParams& params) {
    const double phi = mixing_angle(params);
    const double mbar = params.j.value() * std::sin(phi);
    const double f_m =
        std::sqrt(std::max(params.g * params.g * mbar * mbar - params.omega_s * params.omega_s, 0.0));
    const double theta = std::atan2(-f_m, params.omega_s);
    Eigen::Vector2cd up, um;
    up << std::cos(0.5 * theta), std::sin(0.5 * theta);
    um << std::sin(0.5 * theta), -std::cos(0.5 * theta);
    return {up, um};
}

double adiabatic_ratio_estimate(const LargeSpinParams& params) {
    const double jv = params.j.value();
    const double phi = mixing_angle(params);
    const double sigma = std::sqrt(0.5 * jv);
    auto theta_at = [&](double m) {
        const double f_m =
            std::sqrt(std::max(params.g * params.g * m * m - params.omega_s * params.omega_s, 0.0));
        return std::atan2(-f_m, params.omega_s);
    };
    auto gap_at = [&](double m) {
        const double f_m =
            std::sqrt(std::max(params.g * params.g * m * m - params.omega_s * params.omega_s, 0.0));
        return 2.0 * std::hypot(params.omega_s, f_m);
    };
    // Jx drifts at most at the precession rate ~ omega * j; the classical orbit
    // sweeps Jx/j between sin(phi)(1 - 4cos^2(phi)) and sin(phi).
    const double mdot = std::abs(params.omega) * jv;
    const double orbit_lo = jv * std::sin(phi) * (1.0 - 4.0 * std::cos(phi) * std::cos(phi));
    const double orbit_hi = jv * std::sin(phi);
    double worst = 0.0;
    const double lo = std::max(-jv, std::min(orbit_lo, orbit_hi) - 2.5 * sigma);
    const double hi = std::min(jv, orbit_hi + 2.5 * sigma);
    for (double m = lo; m <= hi; m += 0.25) {
        const double dtheta_dm = (theta_at(m + 0.25) - theta_at(m - 0.25)) * 2.0;
        const double ratio = std::abs(0.5 * dtheta_dm * mdot) / gap_at(m);
        worst = std::max(worst, ratio);
    }
    return worst;
}

}  // namespace decoh::spin
