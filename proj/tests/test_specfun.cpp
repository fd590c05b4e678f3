#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decoh/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace decoh;
using namespace decoh::specfun;

namespace {

// Oracle: exp(+i Jy phi) by dense Hermitian eigendecomposition.
ComplexMatrix expm_i_jy(const SpinOperators& ops, double phi) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.jy);
    ComplexVector ph(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < ph.size(); ++i)
        ph(i) = std::exp(Complex(0.0, phi * es.eigenvalues()(i)));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("spin operators: Pauli case j=1/2") {
    const auto ops = spin_operators(HalfInteger(1));
    CHECK(std::abs(ops.jx(0, 1) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(ops.jy(0, 1) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(ops.jz(0, 0) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(ops.jz(1, 1) - Complex(-0.5, 0.0)) < 1e-15);
}

TEST_CASE("spin operators: j=1 diagonal and guard") {
    const auto ops = spin_operators(HalfInteger(2));
    CHECK(ops.jz(0, 0).real() == doctest::Approx(1.0));
    CHECK(ops.jz(1, 1).real() == doctest::Approx(0.0));
    CHECK(ops.jz(2, 2).real() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(spin_operators(HalfInteger(10002)), std::invalid_argument);
}

TEST_CASE("spin operators: commutators and Casimir at j=20") {
    const auto ops = spin_operators(HalfInteger(40));
    const ComplexMatrix comm = ops.jx * ops.jy - ops.jy * ops.jx - Complex(0, 1) * ops.jz;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
    const ComplexMatrix comm2 = ops.jy * ops.jz - ops.jz * ops.jy - Complex(0, 1) * ops.jx;
    CHECK(comm2.cwiseAbs().maxCoeff() < 1e-12);
    const ComplexMatrix comm3 = ops.jz * ops.jx - ops.jx * ops.jz - Complex(0, 1) * ops.jy;
    CHECK(comm3.cwiseAbs().maxCoeff() < 1e-12);
    const double jv = 20.0;
    const ComplexMatrix casimir = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz -
                                  jv * (jv + 1.0) * ComplexMatrix::Identity(41, 41);
    CHECK(casimir.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("wigner d: identity at phi=0 and half-angle closed form") {
    CHECK(wigner_small_d(HalfInteger(7), 3, 3, 0.0) == doctest::Approx(1.0));
    CHECK(wigner_small_d(HalfInteger(7), 3, 1, 0.0) == doctest::Approx(0.0));
    for (double phi : {0.3, 1.1, 2.7})
        CHECK(wigner_small_d(HalfInteger(1), 1, 1, phi) == doctest::Approx(std::cos(0.5 * phi)));
}

TEST_CASE("wigner d: argument validation") {
    CHECK_THROWS_AS(wigner_small_d(HalfInteger(2), 3, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(wigner_small_d(HalfInteger(2), 1, 0, 0.5), std::invalid_argument);
}

TEST_CASE("wigner d: j=1 entry equals matrix-exponential oracle") {
    const auto ops = spin_operators(HalfInteger(2));
    const auto u = expm_i_jy(ops, M_PI / 2.0);
    const double d10 = wigner_small_d(HalfInteger(2), 2, 0, M_PI / 2.0);
    CHECK(std::abs(d10 - u(0, 1).real()) < 1e-14);
    CHECK(std::abs(u(0, 1).imag()) < 1e-14);
}

TEST_CASE("wigner d: full matrix vs exponential oracle up to 2j+1 = 201") {
    for (int j2 : {5, 40, 200}) {
        const auto ops = spin_operators(HalfInteger(j2));
        for (double phi : {0.7, 2.3}) {
            const auto u = expm_i_jy(ops, phi);
            const auto d = wigner_d_matrix(HalfInteger(j2), phi);
            double worst = 0.0;
            for (int r = 0; r < j2 + 1; ++r)
                for (int c = 0; c < j2 + 1; ++c)
                    worst = std::max(worst, std::abs(Complex(d(r, c), 0.0) - u(r, c)));
            CHECK(worst < 1e-11);
        }
    }
}

TEST_CASE("wigner d: unitarity and group property") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    const HalfInteger j(21);  // half-integer spin 10.5
    for (int rep = 0; rep < 3; ++rep) {
        const double p1 = angle(rng), p2 = angle(rng);
        const auto d1 = wigner_d_matrix(j, p1);
        const auto d2 = wigner_d_matrix(j, p2);
        const auto d12 = wigner_d_matrix(j, p1 + p2);
        CHECK((d1 * d1.transpose() - RealMatrix::Identity(22, 22)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((d1 * d2 - d12).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("laguerre: base cases and frozen references") {
    for (double z : {-2.0, 0.0, 1.5, 30.0}) {
        CHECK(laguerre(0, z) == 1.0);
        CHECK(laguerre(1, z) == doctest::Approx(1.0 - z));
    }
    CHECK(laguerre(2, 0.5) == doctest::Approx(0.125));  // (z^2 - 4z + 2)/2
    CHECK(laguerre(3, 1.2) == doctest::Approx(-0.728));
    CHECK(laguerre(20, 3.7) == doctest::Approx(-0.86827953113018896).epsilon(1e-12));
    CHECK(laguerre(100, 0.01) == doctest::Approx(0.22212272847363271).epsilon(1e-12));
    CHECK(laguerre(150, 0.02) == doctest::Approx(-0.37957479338772704).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre(-1, 0.0), std::invalid_argument);
}

TEST_CASE("laguerre: recurrence residual against explicit low-order series") {
    // L_4(z) = (z^4 - 16 z^3 + 72 z^2 - 96 z + 24)/24, independent of the recurrence
    for (double z : {0.3, 2.0, 11.0, 50.0}) {
        const double series =
            (((z - 16.0) * z + 72.0) * z - 96.0) * z / 24.0 + 1.0;
        CHECK(laguerre(4, z) == doctest::Approx(series).epsilon(1e-12));
    }
    // three-term relation holds to 1e-10 relative along a high-order run
    for (long n : {50L, 199L})
        for (double z : {0.5, 17.0, 50.0}) {
            const double lhs = (n + 1.0) * laguerre(n + 1, z);
            const double rhs = (2.0 * n + 1.0 - z) * laguerre(n, z) - n * laguerre(n - 1, z);
            CHECK(std::abs(lhs - rhs) <=
                  1e-10 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        }
}

namespace {
// Independent J0 series oracle for moderate arguments.
double j0_series_oracle(double z) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -(z * z / 4.0) / (k * (double)k);
        sum += term;
    }
    return sum;
}
}  // namespace

TEST_CASE("bessel j0: values, symmetry, first zero") {
    CHECK(specfun::bessel_j0(0.0) == 1.0);
    // frozen references
    CHECK(std::abs(specfun::bessel_j0(0.5) - 0.93846980724081297) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(1.0) - 0.76519768655796649) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(2.0) - 0.22389077914123562) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(5.0) - -0.17759677131433829) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(8.0) - 0.17165080713755390) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(13.0) - 0.20692610237706779) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(17.5) - -0.10311039822868608) < 1e-10);
    CHECK(std::abs(specfun::bessel_j0(40.0) - 0.0073668905842369514) < 1e-10);
    CHECK(std::abs(specfun::bessel_j0(123.456) - -0.071030062418370676) < 1e-10);
    CHECK(std::abs(specfun::bessel_j0(1000.0) - 0.024786686152420030) < 1e-10);
    CHECK(std::abs(specfun::bessel_j0(9876.5) - 0.00094583368426853049) < 1e-10);
    for (double z : {0.7, 3.3, 25.0}) CHECK(specfun::bessel_j0(-z) == specfun::bessel_j0(z));

    // bisect the independent series oracle for the first positive zero
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (j0_series_oracle(mid) > 0.0 ? lo : hi) = mid;
    }
    const double zero = 0.5 * (lo + hi);
    CHECK(zero == doctest::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(std::abs(specfun::bessel_j0(zero)) < 1e-12);
}
