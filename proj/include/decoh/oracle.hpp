#pragma once

#include "decoh/stern_gerlach.hpp"
#include "decoh/types.hpp"

#include <functional>

// Independent exact-dynamics engines: a two-component split-operator grid
// propagator for the helical-field model and a dense Hermitian-evolution
// engine with partial trace for the spin and Fock models.

namespace decoh::oracle {

// Uniform 1D grid, n_points a power of two, periodic boundary via DFT.
struct Grid1D {
    double x_min = -40.0;
    double x_max = 40.0;
    int n_points = 4096;

    void validate() const;
    double dx() const { return (x_max - x_min) / n_points; }
    double point(int i) const { return x_min + i * dx(); }
};

// Two-component wave field on a grid; component-major storage.
struct SpinorField {
    ComplexVector up, down;

    double norm(const Grid1D& grid) const;
};

// Gaussian spinor initial state (c_plus chi_+[x] + c_minus chi_-[x]) phi(x).
SpinorField initial_spinor_packet(const Grid1D& grid, const sg::SGParams& params, Complex c_plus,
                                  Complex c_minus, const GaussianPacket& packet);

// Result of grid propagation, with the norm drift accumulated over the run.
struct GridRun {
    SpinorField field;
    double norm_drift = 0.0;
};

// Strang splitting for H = p^2/2M + mu B(x) n(x).sigma:
// half kinetic (DFT), exact 2x2 potential exponential per point, half kinetic.
// B(x) defaults to the linearized profile dB/dx(0) * x; a general magnitude
// profile may be supplied (oracle-only feature, the analytic module is linear).
// Asserts packet support stays >= 8 widths from the boundary and norm drift < 1e-8.
GridRun grid_propagate(const Grid1D& grid, const sg::SGParams& params, const SpinorField& initial,
                       double t_final, double dt,
                       const std::function<double(double)>& field_magnitude = {});

// Branch content: projections D_{+-}(x) = <chi_{+-}[x]|psi(x)>, their norms and
// the normalized quadrature overlap <D_+|D_->/sqrt(n_+ n_-).
struct BranchOverlap {
    Complex overlap;      // normalized
    double norm_plus;     // integral |D_+|^2
    double norm_minus;    // integral |D_-|^2
};
BranchOverlap branch_overlap(const Grid1D& grid, const sg::SGParams& params,
                             const SpinorField& field);

// Dense product-space state over listed subsystem dimensions.
struct DenseState {
    std::vector<Eigen::Index> dims;
    ComplexVector amplitudes;

    void validate() const;  // product(dims) == size, unit norm 1e-10
};

// exp(-iHt) state by Hermitian eigendecomposition; dim <= 4096,
// throws on non-Hermitian input (tolerance 1e-10).
DenseState dense_evolve(const ComplexMatrix& hamiltonian, const DenseState& state, double t);

// Standard partial trace keeping subsystem `keep` (index into dims).
ReducedDensityMatrix partial_trace(const DenseState& state, std::size_t keep);

// Evolves a narrow packet under p^2/2M + V(x) on the grid and returns the
// maximum deviation of psi(x,t) from e^{-i V(x) t} psi(x,0) over the support;
// scales as O(1/M) in the regime t << 2 M a^2.
double large_mass_phase_check(const Grid1D& grid, const std::function<double(double)>& potential,
                              double mass, double t, const GaussianPacket& packet, double dt);

namespace detail {
// In-place radix-2 FFT (and inverse); size must be a power of two.
void fft(ComplexVector& data, bool inverse);
}  // namespace detail

}  // namespace decoh::oracle
