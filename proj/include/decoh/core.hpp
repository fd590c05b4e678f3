#pragma once

#include "decoh/types.hpp"

// Model-independent operations: reduced density matrices built from branch
// amplitudes and a decoherence-factor matrix, purity, free packet spreading.

namespace decoh {

// rho[n][n] = |c_n|^2, rho[m][n] = c_m conj(c_n) F[n][m] for m != n,
// with the overlap convention F[n][m] = <D_n|D_m>.
// Throws on dimension mismatch or a non-Hermitian overlap matrix.
ReducedDensityMatrix reduced_density(const BranchDecomposition& branch,
                                     const ComplexMatrix& overlaps);

// tr(rho^2). For rho from reduced_density this equals
// sum_n |c_n|^4 + sum_{n!=m} |c_n|^2 |c_m|^2 |F[n][m]|^2.
double purity(const ReducedDensityMatrix& rho);

// w(t) = a sqrt(1 + t^2 / (4 M^2 a^4)); t must be >= 0.
double free_packet_width(const GaussianPacket& packet, double t);

}  // namespace decoh
