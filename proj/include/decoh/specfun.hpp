#pragma once

#include "decoh/types.hpp"

// Special functions used by the closed-form decoherence factors:
// angular-momentum matrices, Wigner small-d, Laguerre polynomials, J0.

namespace decoh::specfun {

// Angular momentum magnitude j stored as 2j, so half-integer spins are exact.
struct HalfInteger {
    int twice = 0;

    HalfInteger() = default;
    explicit HalfInteger(int twice_value) : twice(twice_value) {
        if (twice < 0) throw std::invalid_argument("HalfInteger: 2j must be >= 0");
    }
    static HalfInteger from_twice(int twice_value) { return HalfInteger(twice_value); }
    double value() const { return 0.5 * twice; }
    int dim() const { return twice + 1; }
};

// (2j+1)-dimensional jx, jy, jz with basis ordering m = j, j-1, ..., -j and
// Condon-Shortley phases (ladder matrix elements real non-negative).
struct SpinOperators {
    HalfInteger j;
    ComplexMatrix jx, jy, jz;
};

// Ladder construction; throws if 2j+1 > 10001.
SpinOperators spin_operators(HalfInteger j);

// Paper convention d^j_{m',m}(phi) = <j,m'| exp(+i Jy phi) |j,m>.
// This equals the textbook d-function (defined with exp(-i Jy beta)) at -phi.
// Arguments carry doubled m values; |m| <= j and j - m integral are required.
// Evaluated through the Jacobi-polynomial three-term recurrence with a
// log-factorial prefactor, stable and overflow-free through 2j of a few hundred.
double wigner_small_d(HalfInteger j, int two_m_row, int two_m_col, double phi);

// Full (2j+1)x(2j+1) rotation matrix exp(+i Jy phi) assembled from wigner_small_d.
RealMatrix wigner_d_matrix(HalfInteger j, double phi);

// Laguerre polynomial L_n(z) by the three-term recurrence; n <= 100000.
double laguerre(long n, double z);

// Bessel J0, |relative error| ~ 1e-11 for |z| <= 1e4.
double bessel_j0(double z);

}  // namespace decoh::specfun
