#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decoh/cavity_mirror.hpp"
#include "decoh/specfun.hpp"

using namespace decoh;
using namespace decoh::cavity;

namespace {

CavityParams base() {
    CavityParams p;
    p.omega = 1.0;
    p.g = 0.5;
    p.f_drive = 0.4;
    p.Omega = 0.9;
    p.M = 1.0;
    p.n_trunc = 64;
    return p;
}

ComplexMatrix number_op(int n) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = i;
    return m;
}

ComplexMatrix lowering(int n) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) b(i - 1, i) = std::sqrt(static_cast<double>(i));
    return b;
}

}  // namespace

TEST_CASE("displacement matrix: identity, first moment, composition, unitarity") {
    const int n = 48;
    CHECK((displacement_matrix(0.0, n) - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-13);

    const Complex alpha(0.7, -0.4);
    const auto d = displacement_matrix(alpha, n);
    ComplexVector vac = ComplexVector::Zero(n);
    vac(0) = 1.0;
    const ComplexVector coh = d * vac;
    const Complex first = coh.dot(lowering(n) * coh);
    CHECK(std::abs(first - alpha) < 1e-8);
    CHECK((coh - coherent_state(alpha, n)).norm() < 1e-10);

    const Complex beta(-0.3, 0.5);
    const Complex phase = std::exp(I * std::imag(alpha * std::conj(beta)));
    const ComplexMatrix lhs = displacement_matrix(alpha, n) * displacement_matrix(beta, n);
    const ComplexMatrix rhs = phase * displacement_matrix(alpha + beta, n);
    // compare on the low-lying block where truncation is immaterial
    CHECK((lhs - rhs).topLeftCorner(n / 2, n / 2).cwiseAbs().maxCoeff() < 1e-7);

    const ComplexMatrix prod = displacement_matrix(alpha, n) * displacement_matrix(-alpha, n);
    CHECK((prod - ComplexMatrix::Identity(n, n)).topLeftCorner(n / 2, n / 2).cwiseAbs().maxCoeff() <
          1e-8);

    CHECK_THROWS_AS(displacement_matrix(Complex(10.0, 0.0), 16), std::invalid_argument);
}

TEST_CASE("adiabatic photon states: Fock limit, displaced vacuum, eigen-residual") {
    CavityParams p = base();
    p.f_drive = 0.0;
    const auto fock3 = adiabatic_photon_state(p, 3, 0.2);
    CHECK(std::abs(fock3(3) - Complex(1, 0)) < 1e-12);

    p = base();
    const double x = 0.3;
    const auto ground = adiabatic_photon_state(p, 0, x);
    CHECK((ground - coherent_state(-p.lambda(x), p.n_trunc)).norm() < 1e-10);

    // dense eigen-residual || H v - E v || for n = 2 at lambda = 0.5
    p.f_drive = 0.5;
    p.g = 0.0;
    p.omega = 1.0;  // lambda(0) = 0.5
    const int nt = p.n_trunc;
    const auto v = adiabatic_photon_state(p, 2, 0.0);
    const double omx = p.omega;  // omega + g x at x = 0
    const ComplexMatrix b = lowering(nt);
    const ComplexMatrix h =
        omx * number_op(nt) + p.f_drive * (b + b.adjoint());
    const double energy = 2.0 * omx - p.f_drive * p.f_drive / omx;
    CHECK((h * v - energy * v).norm() < 1e-7);
    CHECK(std::abs(v.norm() - 1.0) < 1e-8);

    CHECK_THROWS_AS(adiabatic_photon_state(base(), 60, 0.0), std::invalid_argument);
}

TEST_CASE("adiabatic ratio order-of-magnitude form") {
    CavityParams p = base();
    CHECK(adiabatic_ratio(p, 1, 0.0) == doctest::Approx(0.0));
    p.f_drive = 0.0;
    CHECK(adiabatic_ratio(p, 1, 0.3) == doctest::Approx(0.0));
    p = base();
    p.g = 0.01;
    p.f_drive = 1.0;
    p.omega = 1.0;
    CHECK(adiabatic_ratio(p, 1, 0.1) == doctest::Approx(1e-3));
}

TEST_CASE("coherent overlap: worked values and revival") {
    CavityParams p;
    p.omega = 1.0;
    p.M = 1.0;
    p.Omega = 1.0;
    p.g = std::sqrt(2.0);  // mu_c = 1
    p.n_trunc = 64;
    CHECK(overlap_coherent(p, 2, 2, 1.7) == doctest::Approx(1.0));
    CHECK(overlap_coherent(p, 0, 1, 2.0 * M_PI / p.Omega) == doctest::Approx(1.0));
    CHECK(overlap_coherent(p, 0, 1, M_PI) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

    CHECK(overlap_coherent_limit(p, 0, 2, 0.0) == doctest::Approx(1.0));
    CHECK(overlap_coherent_limit(p, 3, 3, 2.0) == doctest::Approx(1.0));
    CavityParams ph = p;
    ph.g = 0.5 * std::sqrt(2.0);  // mu_c = 0.5
    CHECK(overlap_coherent_limit(ph, 0, 2, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("fock overlap: n=0 consistency, worked value, displacement oracle") {
    const auto p = base();
    for (double t : {0.3, 1.1, 2.9})
        CHECK(overlap_fock(p, 0, 2, 0, t) == doctest::Approx(overlap_coherent(p, 0, 2, t)));
    CHECK(overlap_fock(p, 3, 3, 5, 1.3) == doctest::Approx(1.0));

    // e^{-z/2} |L_3(z)| at z = 1.2 against the truncated displacement oracle
    const double z = 1.2;
    const Complex delta(std::sqrt(z), 0.0);
    const auto d = displacement_matrix(delta, p.n_trunc);
    const double oracle_val = std::abs(d(3, 3));
    CHECK(std::exp(-0.5 * z) * std::abs(specfun::laguerre(3, z)) ==
          doctest::Approx(oracle_val).epsilon(1e-10));

    CHECK_THROWS_AS(overlap_fock(p, 0, 1, 70, 0.5), std::invalid_argument);
}

TEST_CASE("fock limit: endpoints, large-n agreement, sign follows J0") {
    CavityParams p;
    p.omega = 1.0;
    p.M = 1.0;
    p.Omega = 1.0;
    p.g = 0.1225 * std::sqrt(2.0);
    p.n_trunc = 128;
    CHECK(overlap_fock_limit(p, 0, 0, 3, 0.7) == doctest::Approx(1.0));  // z = 0

    for (double z : {0.002, 0.01}) {
        const double s = std::sqrt(z / (4.0 * p.mu_c() * p.mu_c()));
        const double t = 2.0 * std::asin(s);
        const double lag = overlap_fock(p, 0, 1, 100, t);
        const double bes = overlap_fock_limit(p, 0, 1, 100, t);
        CHECK(std::abs(lag - bes) / lag < 0.02);
    }

    // first J0 zero at 2 sqrt(n z) = 2.404..: sign flips across z = 0.014458 for n = 100
    auto limit_at_z = [&](double z) {
        const double s = std::sqrt(z / (4.0 * p.mu_c() * p.mu_c()));
        return overlap_fock_limit(p, 0, 1, 100, 2.0 * std::asin(s));
    };
    CHECK(limit_at_z(0.0140) > 0.0);
    CHECK(limit_at_z(0.0150) < 0.0);
    CHECK_THROWS_AS(overlap_fock_limit(p, 0, 1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("mirror branch: initial state, unforced branch, overlap consistency") {
    CavityParams p = base();
    p.n_trunc = cavity::truncation_for(2.0 + 2.0 * std::abs(p.g_n(3)) / p.Omega, 0);
    const Complex alpha0(1.1, -0.2);

    const auto b0 = mirror_branch(p, 2, alpha0, 0.0);
    CHECK((b0 - coherent_state(alpha0, p.n_trunc)).norm() < 1e-10);

    // unforced branch n = f^2/omega^2: set f = omega so n = 1 is inert
    CavityParams inert = p;
    inert.f_drive = inert.omega;
    for (double t : {0.4, 2.2}) {
        const auto b = mirror_branch(inert, 1, alpha0, t);
        CHECK((b - coherent_state(alpha0, inert.n_trunc)).norm() < 1e-9);
    }

    for (double t : {0.5, 1.9}) {
        const auto bm = mirror_branch(p, 0, alpha0, t);
        const auto bn = mirror_branch(p, 3, alpha0, t);
        CHECK(std::abs(bm.dot(bn)) == doctest::Approx(overlap_coherent(p, 0, 3, t)).epsilon(1e-8));
    }
}

TEST_CASE("truncated completeness on the low-energy subspace") {
    CavityParams p = base();
    p.n_trunc = 72;
    const int n_keep = 40;
    ComplexMatrix resolution = ComplexMatrix::Zero(p.n_trunc, p.n_trunc);
    for (int n = 0; n < n_keep; ++n) {
        const auto v = adiabatic_photon_state(p, n, 0.15);
        resolution += v * v.adjoint();
    }
    // a state supported well below n_keep/2 is reproduced
    const ComplexVector probe = coherent_state(Complex(1.2, 0.4), p.n_trunc);
    CHECK((resolution * probe - probe).norm() < 1e-6);
}

TEST_CASE("omega -> 0 convergence is monotone") {
    const double mu = 0.6;
    double prev = 1e9;
    for (double frac : {0.1, 0.05, 0.025}) {
        CavityParams p;
        p.omega = 1.0;
        p.M = 1.0;
        p.Omega = frac * mu;
        p.g = mu * std::sqrt(2.0 * p.M * p.Omega);
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = 3.0 / mu * i / 400.0;
            sup = std::max(sup, std::abs(overlap_coherent(p, 0, 1, t) -
                                         overlap_coherent_limit(p, 0, 1, t)));
        }
        CHECK(sup < prev);
        prev = sup;
    }
}

TEST_CASE("parameter validation") {
    CavityParams p = base();
    p.n_trunc = 4;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = base();
    p.Omega = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
