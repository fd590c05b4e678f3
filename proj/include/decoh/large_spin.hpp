#pragma once

#include "decoh/specfun.hpp"
#include "decoh/types.hpp"

// Two-level system coupled to a spin j through f(J) sigma_x with
// f(J) = sqrt(g^2 Jx^2 - omega_s^2): rotated effective Hamiltonians,
// branch states |D_{+-}(t)> and the collapse-revival decoherence factor
// F(j;t) = |1 - sin^2(2 phi) sin^2(sqrt(g^2+omega^2) t / 2)|^j.

namespace decoh::spin {

using specfun::HalfInteger;

enum class Branch { plus, minus };

struct LargeSpinParams {
    HalfInteger j;
    double omega_s = 0.0;  // two-level splitting
    double omega = 1.0;    // large-spin precession
    double g = 0.0;        // coupling

    double level_splitting() const { return std::hypot(g, omega); }  // sqrt(g^2+omega^2)
    void validate() const {
        if (omega == 0.0) throw std::invalid_argument("LargeSpinParams: omega must be nonzero");
    }
};

// phi = arctan(g/omega); phi_{+-} = +-phi. Throws when omega = 0.
double mixing_angle(const LargeSpinParams& params);

// Precomputed evolver for |D_{+-}(t)> = e^{+-i Jy phi} e^{-i t Jz L} e^{-+i Jy phi} |j,-j(phi)>,
// L = sqrt(g^2+omega^2). Rotations are built by Hermitian eigendecomposition of Jy
// so that repeated time samples reuse one diagonalization.
class BranchEvolver {
  public:
    explicit BranchEvolver(const LargeSpinParams& params);
    ComplexVector state(Branch branch, double t) const;
    Complex overlap(double t) const;  // <D_-(t)|D_+(t)>

  private:
    LargeSpinParams params_;
    double phi_;
    RealVector jy_eigs_;
    ComplexMatrix jy_vecs_;
    ComplexVector initial_;  // |j,-j(phi)>
    ComplexMatrix rot_plus_, rot_minus_;  // exp(+-i Jy phi)
};

// Single-shot versions of the evolver (fresh diagonalization per call).
ComplexVector branch_state(const LargeSpinParams& params, Branch branch, double t);

// Closed form Eq-level factor; computed as exp(j ln|base|), 0 when base = 0.
double decoherence_factor_analytic(const LargeSpinParams& params, double t);

// <D_-(t)|D_+(t)> from the matrix-built branch states; 2j+1 <= 2001.
Complex decoherence_factor_numeric(const LargeSpinParams& params, double t);

// t_n = 2 pi n / sqrt(g^2+omega^2), n = 0..n_max: exact revivals F = 1.
std::vector<double> revival_times(const LargeSpinParams& params, int n_max);

// f(J) = sqrt(g^2 Jx^2 - omega_s^2) on the truncated positive part; sets
// *clamped to true when any Jx eigenvalue falls below the operator domain.
ComplexMatrix coupling_operator(const LargeSpinParams& params, bool* clamped = nullptr);

// Full 2(2j+1)-dimensional Hamiltonian omega_s sz + omega Jz + f(J) sx
// (fast index slow-major: basis |s> (x) |m>).
ComplexMatrix full_hamiltonian(const LargeSpinParams& params);

// Initial product state (c_plus |u_+[m]> + c_minus |u_-[m]>) (x) |j,-j(phi)>
// assembled sector by sector in the Jx eigenbasis.
ComplexVector full_initial_state(const LargeSpinParams& params, Complex c_plus, Complex c_minus);

// Adiabatic two-level basis at the dominant sector m ~ <Jx> = j sin(phi).
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> adiabatic_two_level_basis(const LargeSpinParams& params);

// Estimate of the adiabatic-condition ratio |<+|d/dt|-> / (V_+ - V_-)| over the
// orbit's Jx support (used to certify full-model comparisons).
double adiabatic_ratio_estimate(const LargeSpinParams& params);

}  // namespace decoh::spin
