#include "decoh/specfun.hpp"

#include <cmath>

namespace decoh::specfun {

SpinOperators spin_operators(HalfInteger j) {
    const int dim = j.dim();
    if (dim > 10001) throw std::invalid_argument("spin_operators: 2j+1 > 10001");
    SpinOperators ops;
    ops.j = j;
    ops.jx = ComplexMatrix::Zero(dim, dim);
    ops.jy = ComplexMatrix::Zero(dim, dim);
    ops.jz = ComplexMatrix::Zero(dim, dim);
    const double jv = j.value();
    for (int r = 0; r < dim; ++r) ops.jz(r, r) = jv - r;
    // J+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>, row ordering m = j..-j
    for (int r = 1; r < dim; ++r) {
        const double m = jv - r;
        const double amp = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
        ops.jx(r - 1, r) += 0.5 * amp;
        ops.jx(r, r - 1) += 0.5 * amp;
        ops.jy(r - 1, r) += Complex(0.0, -0.5) * amp;
        ops.jy(r, r - 1) += Complex(0.0, 0.5) * amp;
    }
    return ops;
}

namespace {

// Jacobi polynomial P_n^{(a,b)}(x) by the classical three-term recurrence.
long double jacobi_poly(int n, int a, int b, long double x) {
    if (n == 0) return 1.0L;
    long double p0 = 1.0L;
    long double p1 = (a + 1) + (a + b + 2) * (x - 1.0L) / 2.0L;
    for (int k = 2; k <= n; ++k) {
        const long double c1 = 2.0L * k * (k + a + b) * (2 * k + a + b - 2);
        const long double c2 =
            (2 * k + a + b - 1) * ((2.0L * k + a + b) * (2 * k + a + b - 2) * x + a * a - b * b);
        const long double c3 = 2.0L * (k + a - 1) * (k + b - 1) * (2 * k + a + b);
        const long double p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// Textbook convention d^j_{m',m}(beta) = <j,m'| exp(-i Jy beta) |j,m> through
// the Jacobi-polynomial representation (doubled m arguments).
double wigner_d_std(int j2, int mr2, int mc2, double beta) {
    const int jm = (j2 + mc2) / 2, jmm = (j2 - mc2) / 2;
    const int jmp = (j2 + mr2) / 2, jmpm = (j2 - mr2) / 2;
    const int k = std::min(std::min(jm, jmm), std::min(jmp, jmpm));
    int a, lam;
    if (k == jm) {
        a = (mr2 - mc2) / 2;
        lam = a;
    } else if (k == jmm) {
        a = (mc2 - mr2) / 2;
        lam = 0;
    } else if (k == jmp) {
        a = (mc2 - mr2) / 2;
        lam = 0;
    } else {
        a = (mr2 - mc2) / 2;
        lam = a;
    }
    const int b = j2 - 2 * k - a;
    const double lnc = 0.5 * (std::lgamma(j2 - k + 1.0) - std::lgamma(k + a + 1.0) -
                              std::lgamma(j2 - 2.0 * k - a + 1.0)) -
                       0.5 * (std::lgamma(k + b + 1.0) - std::lgamma(b + 1.0) -
                              std::lgamma(k + 1.0));
    const long double s = std::sin(0.5L * (long double)beta);
    const long double c = std::cos(0.5L * (long double)beta);
    const long double val = std::pow(s, (long double)a) * std::pow(c, (long double)b) *
                            jacobi_poly(k, a, b, std::cos((long double)beta));
    const double sign = (lam % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(lnc) * static_cast<double>(val);
}

}  // namespace

double wigner_small_d(HalfInteger j, int two_m_row, int two_m_col, double phi) {
    const int j2 = j.twice;
    if (std::abs(two_m_row) > j2 || std::abs(two_m_col) > j2)
        throw std::invalid_argument("wigner_small_d: |m| > j");
    if ((j2 - two_m_row) % 2 != 0 || (j2 - two_m_col) % 2 != 0)
        throw std::invalid_argument("wigner_small_d: m must differ from j by integers");
    // paper convention uses exp(+i Jy phi) = textbook rotation at -phi
    return wigner_d_std(j2, two_m_row, two_m_col, -phi);
}

RealMatrix wigner_d_matrix(HalfInteger j, double phi) {
    const int dim = j.dim();
    RealMatrix d(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            d(r, c) = wigner_small_d(j, j.twice - 2 * r, j.twice - 2 * c, phi);
    return d;
}

double laguerre(long n, double z) {
    if (n < 0 || n > 100000) throw std::invalid_argument("laguerre: n out of range");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = 1.0 - z;
    for (long k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0 - z) * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace {

// Power series in long double; cancellation stays benign for |z| <= 16.
double bessel_j0_series(double z) {
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 80; ++k) {
        term *= -q / ((long double)k * k);
        sum += term;
        if (std::abs((double)term) < 1e-22 * std::abs((double)sum)) break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion, truncated at the smallest term.
// With a_m = ((2m-1)!!)^2 / (m! 8^m): P = 1 - a_2/z^2 + a_4/z^4 - ...,
// Q = -a_1/z + a_3/z^3 - ...; J0 = sqrt(2/pi z)(P cos(z-pi/4) - Q sin(z-pi/4)).
double bessel_j0_asymptotic(double z) {
    long double a = 1.0L;  // a_0
    long double P = 1.0L, Q = 0.0L;
    long double zp = 1.0L;
    long double best = 1e30L;
    for (int m = 1; m <= 40; ++m) {
        a *= (long double)(2 * m - 1) * (2 * m - 1) / (8.0L * m);
        zp *= z;
        const long double mag = a / zp;
        if (mag > best) break;  // asymptotic series turned divergent
        best = mag;
        const int s = m / 2;
        const long double sgn = (s % 2 == 0) ? 1.0L : -1.0L;
        if (m % 2 == 1)
            Q += -sgn * a / zp;  // odd m feeds Q, leading term -1/(8z)
        else
            P += sgn * a / zp;
    }
    const long double chi = (long double)z - 0.78539816339744830961L;  // z - pi/4
    const long double val =
        std::sqrt(2.0L / (3.14159265358979323846L * z)) * (P * std::cos(chi) - Q * std::sin(chi));
    return static_cast<double>(val);
}

}  // namespace

double bessel_j0(double z) {
    z = std::abs(z);
    if (z <= 16.0) return bessel_j0_series(z);
    return bessel_j0_asymptotic(z);
}

}  // namespace decoh::specfun
