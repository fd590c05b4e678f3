#include "decoh/verify.hpp"

#include "decoh/cavity_mirror.hpp"
#include "decoh/core.hpp"
#include "decoh/large_spin.hpp"
#include "decoh/localization.hpp"
#include "decoh/oracle.hpp"
#include "decoh/semiclassics.hpp"
#include "decoh/specfun.hpp"
#include "decoh/stern_gerlach.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace decoh::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Row gate(std::string name, double measured, double tol, std::string note = "") {
    Row r;
    r.criterion = std::move(name);
    r.measured = measured;
    r.tolerance = tol;
    r.pass = measured <= tol;
    r.note = std::move(note);
    return r;
}

Row gate_flag(std::string name, bool ok, double measured, double tol, std::string note = "") {
    Row r;
    r.criterion = std::move(name);
    r.measured = measured;
    r.tolerance = tol;
    r.pass = ok;
    r.note = std::move(note);
    return r;
}

Row info(std::string name, double measured, std::string note = "") {
    Row r;
    r.criterion = std::move(name);
    r.measured = measured;
    r.informational = true;
    r.pass = true;
    r.note = std::move(note);
    return r;
}

spin::LargeSpinParams spin_params(int j2, double phi, double omega_s = 0.0) {
    spin::LargeSpinParams p;
    p.j = specfun::HalfInteger(j2);
    p.omega = 1.0;
    p.g = std::tan(phi);
    p.omega_s = omega_s;
    return p;
}

}  // namespace

Report check_spin_exactness(Level level) {
    Report rep;
    const auto t0 = Clock::now();
    const std::vector<int> j2s = level == Level::full ? std::vector<int>{1, 10, 40, 200}
                                                      : std::vector<int>{1, 10, 40};
    const std::vector<double> phis = {M_PI / 8.0, M_PI / 6.0, M_PI / 4.0};
    double worst = 0.0;
    for (int j2 : j2s)
        for (double phi : phis) {
            const auto params = spin_params(j2, phi);
            const spin::BranchEvolver evolver(params);
            const double horizon = 4.0 * M_PI / params.level_splitting();
            for (int i = 0; i < 200; ++i) {
                const double t = horizon * i / 199.0;
                const double numeric = std::abs(evolver.overlap(t));
                const double analytic = spin::decoherence_factor_analytic(params, t);
                worst = std::max(worst, std::abs(numeric - analytic));
            }
        }
    rep.rows.push_back(gate("1a large-spin: max |analytic - |<D-|D+>|| over (j,phi,t) grid",
                            worst, 1e-10));
    rep.rows.push_back(gate("1b large-spin: runtime [s]", seconds_since(t0), 5.0));
    return rep;
}

Report check_spin_revivals(Level level) {
    (void)level;
    Report rep;
    double worst_revival = 0.0;
    {
        const auto params = spin_params(40, M_PI / 6.0);
        for (double tn : spin::revival_times(params, 3))
            worst_revival =
                std::max(worst_revival, std::abs(spin::decoherence_factor_analytic(params, tn) - 1.0));
    }
    rep.rows.push_back(gate("2a large-spin: max |F(t_n) - 1| at revival times", worst_revival, 1e-12));

    // dual-route branch states: d-function rotation matrices vs eigendecomposition
    {
        const auto params = spin_params(40, M_PI / 6.0);
        const double phi = spin::mixing_angle(params);
        const auto j = params.j;
        const RealMatrix rot_p = specfun::wigner_d_matrix(j, phi);
        const RealMatrix rot_m = specfun::wigner_d_matrix(j, -phi);
        ComplexVector lowest = ComplexVector::Zero(j.dim());
        lowest(j.dim() - 1) = 1.0;
        const ComplexVector init = rot_p.cast<Complex>() * lowest;
        double worst = 0.0;
        for (double t : {0.4, 1.9, 5.2}) {
            ComplexVector v = rot_m.cast<Complex>() * init;
            for (int r = 0; r < j.dim(); ++r)
                v(r) *= std::exp(-Complex(0, 1) * t * params.level_splitting() * (j.value() - r));
            const ComplexVector via_d = rot_p.cast<Complex>() * v;
            worst = std::max(worst,
                             (via_d - spin::branch_state(params, spin::Branch::plus, t)).norm());
        }
        rep.rows.push_back(
            gate("2c large-spin: d-function route vs eigendecomposition route", worst, 1e-11));
    }

    std::vector<double> mins;
    for (int j2 : {10, 40, 200}) {
        const auto params = spin_params(j2, M_PI / 6.0);
        const double period = 2.0 * M_PI / params.level_splitting();
        double mn = 1.0;
        for (int i = 0; i <= 2000; ++i)
            mn = std::min(mn, spin::decoherence_factor_analytic(params, period * i / 2000.0));
        mins.push_back(mn);
    }
    const bool decreasing = mins[0] > mins[1] && mins[1] > mins[2];
    rep.rows.push_back(gate_flag("2b large-spin: min-over-period F strictly decreasing j=5,20,100",
                                 decreasing, mins[2], mins[0],
                                 "mins " + std::to_string(mins[0]) + " > " + std::to_string(mins[1]) +
                                     " > " + std::to_string(mins[2])));
    return rep;
}

Report check_spin_full_model(Level level) {
    Report rep;
    const auto t0 = Clock::now();
    // phi > pi/3 keeps the precession orbit clear of the Jx = 0 crossing where
    // f(J) leaves its operator domain and the fast gap collapses.
    spin::LargeSpinParams params = spin_params(20, 1.3, 0.05);
    const double ratio = spin::adiabatic_ratio_estimate(params);
    rep.rows.push_back(gate("3a large-spin full model: adiabatic-condition ratio", ratio, 0.01));

    const Complex c_plus(1.0 / std::sqrt(2.0), 0.0), c_minus(1.0 / std::sqrt(2.0), 0.0);
    const ComplexMatrix h = spin::full_hamiltonian(params);
    oracle::DenseState psi0;
    psi0.dims = {2, params.j.dim()};
    psi0.amplitudes = spin::full_initial_state(params, c_plus, c_minus);
    psi0.amplitudes.normalize();

    const auto [up, um] = spin::adiabatic_two_level_basis(params);
    const double horizon = 4.0 * M_PI / params.level_splitting();
    const int npts = level == Level::full ? 120 : 40;
    double worst = 0.0;
    for (int i = 1; i <= npts; ++i) {
        const double t = horizon * i / npts;
        const auto psit = oracle::dense_evolve(h, psi0, t);
        const auto rho = oracle::partial_trace(psit, 0);
        const Complex od = up.dot(rho.entries * um);
        const double target =
            std::abs(c_plus) * std::abs(c_minus) * spin::decoherence_factor_analytic(params, t);
        worst = std::max(worst, std::abs(std::abs(od) - target));
    }
    // "within 5%" on the |c+ c-| = 1/2 off-diagonal scale
    rep.rows.push_back(gate("3b large-spin full model: max ||rho_+-| - |c+c-|F| / |c+c-|",
                            worst / (std::abs(c_plus) * std::abs(c_minus)), 0.05));
    rep.rows.push_back(gate("3c large-spin full model: runtime [s]", seconds_since(t0), 60.0));
    return rep;
}

Report check_sg_grid(Level level) {
    Report rep;
    const auto t0 = Clock::now();
    const auto params = sg::SGParams::make(100.0, 1.0, 0.1, 1.0, M_PI / 2.0);
    const double tau = sg::decoherence_time(params);

    oracle::Grid1D grid;
    grid.x_min = -40.0;
    grid.x_max = 40.0;
    grid.n_points = level == Level::full ? 4096 : 1024;
    const double t_end = level == Level::full ? 2.0 * tau : 12.0;
    const double dt = level == Level::full ? 0.01 : 0.02;

    GaussianPacket packet;
    packet.width = params.width;
    packet.mass = params.mass;
    const Complex c(1.0 / std::sqrt(2.0), 0.0);
    auto field = oracle::initial_spinor_packet(grid, params, c, c, packet);

    const double sample_every = 0.5;
    const long steps_per_sample = std::lround(sample_every / dt);
    const long nsamples = std::lround(t_end / sample_every);
    double max_dev_printed = 0.0, max_dev_exact = 0.0, max_dev_exact_resolved = 0.0;
    double fit_sum = 0.0;
    int fit_count = 0;
    double drift = 0.0;
    oracle::BranchOverlap last{};
    for (long s = 1; s <= nsamples; ++s) {
        const double t_target = s * sample_every;
        auto run = oracle::grid_propagate(grid, params, field, steps_per_sample * dt, dt);
        field = std::move(run.field);
        drift += run.norm_drift;
        last = oracle::branch_overlap(grid, params, field);
        const double f_grid = std::abs(last.overlap);
        const double f_printed = sg::decoherence_factor(params, t_target);
        const double f_exact = sg::decoherence_factor_exact(params, t_target);
        max_dev_printed = std::max(max_dev_printed, std::abs(f_grid - f_printed));
        max_dev_exact = std::max(max_dev_exact, std::abs(f_grid - f_exact));
        if (f_exact >= std::exp(-1.0))
            max_dev_exact_resolved = std::max(max_dev_exact_resolved, std::abs(f_grid - f_exact));
        if (f_exact > 0.5 && f_exact < 0.95) {
            const double a = params.width, f = params.force, M = params.mass;
            const double sep = f * t_target * t_target;
            const double c_fit = (-std::log(f_grid) - sep * sep / (8.0 * a * a * M * M)) /
                                 (a * a * f * f * t_target * t_target);
            fit_sum += c_fit;
            ++fit_count;
        }
    }

    rep.rows.push_back(gate("4a SG grid oracle: accumulated norm drift", drift, 1e-8));
    rep.rows.push_back(gate("4b SG grid oracle: runtime [s]", seconds_since(t0), 120.0));
    rep.rows.push_back(gate("4c SG grid vs printed closed form, max |dF| over [0," +
                                std::to_string(t_end) + "]",
                            max_dev_printed, 0.05,
                            "printed first exponent term is half the exact one"));
    rep.rows.push_back(info("4d SG grid vs exact overlap form, max |dF| over window",
                            max_dev_exact,
                            "floor set by non-adiabatic leakage at the B(x)=0 crossing"));
    rep.rows.push_back(info("4e SG grid vs exact overlap form, max |dF| where F >= 1/e",
                            max_dev_exact_resolved));
    if (fit_count > 0)
        rep.rows.push_back(info("4f measured first-exponent factor (printed form has 1, appendix 2)",
                                fit_sum / fit_count));
    rep.rows.push_back(info("4g non-adiabatic branch population transfer",
                            std::abs(last.norm_plus - 0.5) + std::abs(last.norm_minus - 0.5)));
    return rep;
}

Report check_sg_decoherence_time(Level level) {
    (void)level;
    Report rep;
    const auto params = sg::SGParams::make(100.0, 1.0, 0.1, 1.0, M_PI / 2.0);
    const double a = params.width, f = params.force, M = params.mass;
    auto longtime = [&](double t) { return std::exp(-f * f * t * t * t * t / (8.0 * a * a * M * M)); };
    const double target = std::exp(-1.0);
    double lo = 0.0, hi = 10.0 * sg::decoherence_time(params);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (longtime(mid) > target ? lo : hi) = mid;
    }
    const double numeric = 0.5 * (lo + hi);
    const double analytic = sg::decoherence_time(params);
    rep.rows.push_back(gate("5  SG decoherence time: |numeric e^-1 crossing - analytic| / analytic",
                            std::abs(numeric - analytic) / analytic, 1e-9));
    return rep;
}

Report check_sg_analytics(Level level) {
    (void)level;
    Report rep;
    const auto params = sg::SGParams::make(100.0, 1.0, 0.1, 1.0, M_PI / 3.0);

    // spinor orthonormality across positions
    double worst_spinor = 0.0;
    for (double x : {-4.0, 0.0, 1.7, 9.2}) {
        const auto [cp, cm] = sg::adiabatic_spinors(x, params.tilt, params.helix_k);
        worst_spinor = std::max({worst_spinor, std::abs(cp.dot(cm)), std::abs(cp.norm() - 1.0),
                                 std::abs(cm.norm() - 1.0)});
    }
    rep.rows.push_back(gate("5a SG spinors: orthonormality residual", worst_spinor, 1e-14));

    // factorization parameters satisfy their defining ODE system (central differences)
    double worst_ode = 0.0;
    const auto [ap, am] = sg::induced_gauge(params.tilt, params.helix_k);
    for (double t : {0.6, 2.3, 7.1}) {
        const double h = 1e-5;
        const auto wm = sg::wei_norman_params(params.mass, ap, params.force, t - h);
        const auto wp = sg::wei_norman_params(params.mass, ap, params.force, t + h);
        const auto wc = sg::wei_norman_params(params.mass, ap, params.force, t);
        const Complex dalpha = (wp.alpha - wm.alpha) / (2.0 * h);
        const Complex dbeta = (wp.beta - wm.beta) / (2.0 * h);
        const Complex dgamma = (wp.gamma - wm.gamma) / (2.0 * h);
        const Complex dmu = (wp.mu - wm.mu) / (2.0 * h);
        worst_ode = std::max(
            {worst_ode, std::abs(dalpha + Complex(0, 0.5 / params.mass)),
             std::abs(dgamma + Complex(0, params.force)),
             std::abs(dbeta - Complex(0, 2) * wc.alpha * dgamma - Complex(0, ap / params.mass)),
             std::abs(dmu - Complex(0, 1) * wc.beta * dgamma)});
    }
    rep.rows.push_back(gate("5b SG factorization parameters: ODE residual", worst_ode, 1e-8));

    // branch wave functions: center on the trajectories, overlap matches the exact form
    double worst_center = 0.0, worst_overlap = 0.0;
    for (double t : {1.0, 6.0}) {
        const double L = 60.0;
        const int n = 40001;
        const double h = 2.0 * L / (n - 1);
        Complex ov(0, 0);
        for (sg::Branch b : {sg::Branch::plus, sg::Branch::minus}) {
            double m1 = 0.0, nrm = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = -L + i * h;
                const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                const double dens = std::norm(sg::branch_wavefunction(params, b, t, x));
                m1 += w * dens * x;
                nrm += w * dens;
            }
            worst_center = std::max(worst_center,
                                    std::abs(m1 / nrm - sg::trajectory(params, b, t)));
        }
        for (int i = 0; i < n; ++i) {
            const double x = -L + i * h;
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            ov += w * std::conj(sg::branch_wavefunction(params, sg::Branch::plus, t, x)) *
                  sg::branch_wavefunction(params, sg::Branch::minus, t, x);
        }
        worst_overlap = std::max(
            worst_overlap, std::abs(std::abs(ov * h) - sg::decoherence_factor_exact(params, t)));
    }
    rep.rows.push_back(gate("5c SG branch centers vs trajectories (quadrature)", worst_center, 1e-8));
    rep.rows.push_back(
        gate("5d SG branch-wavefunction overlap vs exact closed form", worst_overlap, 1e-6));

    // raw comparison plus the reported ratio for the separation condition
    const double tau = sg::decoherence_time(params);
    rep.rows.push_back(info("5e SG distinguishability ratio at tau_d",
                            sg::distinguishability_ratio(params, tau),
                            sg::distinguishability_condition(params, tau) ? "separated"
                                                                          : "not separated"));
    const double xdot = params.force * tau / params.mass;
    const double xc = std::abs(sg::trajectory(params, sg::Branch::minus, tau));
    rep.rows.push_back(info("5f SG adiabatic-condition ratio at tau_d (packet center)",
                            sg::adiabaticity_ratio(params, xdot, xc,
                                                   params.field_gradient * xc)));
    return rep;
}

Report check_cavity_overlaps(Level level) {
    (void)level;
    Report rep;
    cavity::CavityParams params;
    params.omega = 1.0;
    params.Omega = 1.0;
    params.M = 1.0;
    params.g = 0.6 * std::sqrt(2.0);  // mu_c = 0.6
    params.f_drive = 0.3;
    const Complex alpha0(0.8, 0.0);

    double amax = std::abs(alpha0);
    for (int n : {0, 1, 3}) amax += std::abs(params.alpha_n(n, M_PI));
    params.n_trunc = cavity::truncation_for(amax, 12);

    double worst_coherent = 0.0;
    for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}})
        for (double t : {0.4, 1.1, 2.4, M_PI}) {
            const auto bm = cavity::mirror_branch(params, m, alpha0, t);
            const auto bn = cavity::mirror_branch(params, n, alpha0, t);
            const double numeric = std::abs(bm.dot(bn));
            worst_coherent =
                std::max(worst_coherent, std::abs(numeric - cavity::overlap_coherent(params, m, n, t)));
        }
    rep.rows.push_back(gate("6a cavity: coherent overlap, analytic vs truncated-Fock oracle",
                            worst_coherent, 1e-8));

    double worst_fock = 0.0;
    for (int nm : {0, 3, 7})
        for (double t : {0.5, 1.3, 2.2}) {
            const int k = 0, l = 1;
            const Complex delta = params.alpha_n(l, t) - params.alpha_n(k, t);
            const auto d = cavity::displacement_matrix(delta, params.n_trunc);
            const double numeric = std::abs(d(nm, nm));
            worst_fock =
                std::max(worst_fock, std::abs(numeric - cavity::overlap_fock(params, k, l, nm, t)));
        }
    rep.rows.push_back(
        gate("6b cavity: Fock overlap, Laguerre form vs truncated-Fock oracle", worst_fock, 1e-8));

    // z = 1: the printed argument (z/4) must visibly disagree with the oracle form
    const double s2 = params.Omega * params.Omega / (4.0 * params.mu_c() * params.mu_c());
    const double t_z1 = 2.0 / params.Omega * std::asin(std::sqrt(s2));
    const double exact = cavity::overlap_fock(params, 0, 1, 3, t_z1);
    const double printed = cavity::overlap_fock_printed(params, 0, 1, 3, t_z1);
    const double rel = std::abs(printed - exact) / exact;
    rep.rows.push_back(gate_flag(
        "6c cavity: printed-form discrepancy at z=1 demonstrated (relative gap >= 10%)", rel >= 0.10,
        rel, 0.10, "informational demonstration row; the printed argument is 4x too small"));

    // adiabatic photon states: eigenvector residual against the dense truncated Hamiltonian
    double worst_res = 0.0;
    for (int n : {0, 2, 5}) {
        const double x = 0.2;
        const auto v = cavity::adiabatic_photon_state(params, n, x);
        const double omx = params.omega + params.g * x;
        const int nt = params.n_trunc;
        ComplexMatrix hph = ComplexMatrix::Zero(nt, nt);
        for (int i = 0; i < nt; ++i) {
            hph(i, i) = omx * i;
            if (i > 0) {
                hph(i - 1, i) = params.f_drive * std::sqrt(static_cast<double>(i));
                hph(i, i - 1) = params.f_drive * std::sqrt(static_cast<double>(i));
            }
        }
        const double energy = n * omx - params.f_drive * params.f_drive / omx;
        worst_res = std::max(worst_res, (hph * v - energy * v).norm());
    }
    rep.rows.push_back(
        gate("6d cavity: adiabatic photon-state eigen-residual ||Hv - Ev||", worst_res, 1e-7));
    rep.rows.push_back(info("6e cavity: adiabatic-condition ratio at xdot = mu_c Omega",
                            cavity::adiabatic_ratio(params, 1, params.mu_c() * params.Omega)));
    return rep;
}

Report check_cavity_limit(Level level) {
    (void)level;
    Report rep;
    const double mu = 0.6;
    std::vector<double> sups;
    for (double frac : {0.1, 0.05, 0.025}) {
        cavity::CavityParams params;
        params.omega = 1.0;
        params.M = 1.0;
        params.Omega = frac * mu;
        params.g = mu * std::sqrt(2.0 * params.M * params.Omega);
        double sup = 0.0;
        for (int i = 0; i <= 600; ++i) {
            const double t = 3.0 / mu * i / 600.0;
            sup = std::max(sup, std::abs(cavity::overlap_coherent(params, 0, 1, t) -
                                         cavity::overlap_coherent_limit(params, 0, 1, t)));
        }
        sups.push_back(sup);
    }
    const bool monotone = sups[0] > sups[1] && sups[1] > sups[2];
    rep.rows.push_back(gate_flag("7  cavity: sup_t |F_Omega - limit| decreasing for Omega -> 0",
                                 monotone, sups[2], sups[0],
                                 "sups " + std::to_string(sups[0]) + " > " + std::to_string(sups[1]) +
                                     " > " + std::to_string(sups[2])));
    return rep;
}

Report check_cavity_fock_decay(Level level) {
    (void)level;
    Report rep;
    cavity::CavityParams params;
    params.omega = 1.0;
    params.M = 1.0;
    params.Omega = 1.0;
    params.g = 0.1225 * std::sqrt(2.0);  // z_max = 4 mu^2 = 0.06, below L_20's first zero
    params.n_trunc = 128;

    std::vector<double> mins;
    for (int nm : {1, 5, 20}) {
        double mn = 1.0;
        for (int i = 0; i <= 2000; ++i) {
            const double t = 2.0 * M_PI / params.Omega * i / 2000.0;
            mn = std::min(mn, cavity::overlap_fock(params, 0, 1, nm, t));
        }
        mins.push_back(mn);
    }
    const bool decreasing = mins[0] > mins[1] && mins[1] > mins[2];
    rep.rows.push_back(gate_flag("8a cavity: first-period min of F(t,n) decreasing for n=1,5,20",
                                 decreasing, mins[2], mins[0],
                                 "mins " + std::to_string(mins[0]) + " > " + std::to_string(mins[1]) +
                                     " > " + std::to_string(mins[2])));

    double worst = 0.0;
    for (double z : {0.002, 0.005, 0.01}) {
        // choose t so that fock_argument = z
        const double s = std::sqrt(z * params.Omega * params.Omega / (4.0 * params.mu_c() * params.mu_c()));
        const double t = 2.0 / params.Omega * std::asin(s);
        const double lag = cavity::overlap_fock(params, 0, 1, 100, t);
        const double bes = cavity::overlap_fock_limit(params, 0, 1, 100, t);
        worst = std::max(worst, std::abs(lag - bes) / lag);
    }
    rep.rows.push_back(gate("8b cavity: Bessel asymptotic vs Laguerre form at n=100, nz <= 1",
                            worst, 0.02));
    return rep;
}

Report check_localization_factorization(Level level) {
    Report rep;
    const auto t0 = Clock::now();
    const std::size_t n = level == Level::full ? 8 : 6;
    loc::LocalizationParams params;
    for (std::size_t j = 0; j < n; ++j) {
        params.omegas.push_back(0.8 + 0.1 * j);
        params.couplings.push_back(0.05 + 0.01 * j);
        params.offsets.push_back(0.0);
    }
    const double x = 0.7, xp = -0.4, t = 2.3;

    // brute force on the full 2^N tensor product
    const Eigen::Index dim = Eigen::Index(1) << n;
    auto build = [&](double pos) {
        ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
        for (std::size_t j = 0; j < n; ++j)
            for (Eigen::Index b = 0; b < dim; ++b) {
                const bool excited = (b >> (n - 1 - j)) & 1;  // qubit j, |e> = bit 1
                h(b, b) += excited ? params.omegas[j] : -params.omegas[j];
                const Eigen::Index flipped = b ^ (Eigen::Index(1) << (n - 1 - j));
                h(flipped, b) += params.couplings[j] * (pos + params.offsets[j]);
            }
        return h;
    };
    oracle::DenseState ground;
    ground.dims = {dim};
    ground.amplitudes = ComplexVector::Zero(dim);
    ground.amplitudes(0) = 1.0;  // all qubits |g> = bit 0
    const auto psi_x = oracle::dense_evolve(build(x), ground, t);
    const auto psi_xp = oracle::dense_evolve(build(xp), ground, t);
    const Complex brute = psi_xp.amplitudes.dot(psi_x.amplitudes);
    const Complex product = loc::total_decoherence_factor(params, x, xp, t, loc::CouplingMode::exact);

    rep.rows.push_back(gate("9a localization: |product factorization - 2^N brute force|",
                            std::abs(brute - product), 1e-12));
    rep.rows.push_back(gate("9b localization: runtime [s]", seconds_since(t0), 10.0));
    return rep;
}

Report check_localization_rate(Level level) {
    (void)level;
    Report rep;
    // discretized flat spectrum: rho(w) = 4 gamma / (pi g^2) -> spacing pi g^2/(4 gamma)
    const std::size_t n = 2000;
    const double g = 0.02, dw = 0.1, wmin = 0.01;
    const double gamma = M_PI * g * g / (4.0 * dw);
    loc::LocalizationParams params;
    for (std::size_t i = 0; i < n; ++i) {
        params.omegas.push_back(wmin + (i + 0.5) * dw);
        params.couplings.push_back(g);
        params.offsets.push_back(0.0);
    }
    double worst = 0.0;
    for (double t : {0.5, 0.75, 1.0}) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::sin(params.omegas[i] * t);
            r += g * g / (2.0 * params.omegas[i] * params.omegas[i]) * s * s;
        }
        worst = std::max(worst, std::abs(r / (gamma * t) - 1.0));
    }
    rep.rows.push_back(gate("10a localization: discretized-spectrum |R(t)/(gamma t) - 1|, N=2000",
                            worst, 0.02));

    loc::SpectralModel model;
    model.gamma = gamma;
    model.coupling = g;
    model.band_min = wmin;
    model.band_max = wmin + n * dw;
    double worst_q = 0.0;
    for (double t : {0.5, 0.75, 1.0})
        worst_q = std::max(worst_q,
                           std::abs(loc::localization_exponent(model, t) / (gamma * t) - 1.0));
    rep.rows.push_back(
        gate("10b localization: quadrature |R(t)/(gamma t) - 1| over the band", worst_q, 0.02));
    return rep;
}

Report check_localization_densities(Level level) {
    (void)level;
    Report rep;
    loc::TwoPacketState state;
    state.separation = 2.0;
    state.width = 0.2;
    const double gamma = 0.1, t = 1.0, a = state.separation;
    const double diag = loc::two_packet_density(state, gamma, t, a, a);
    const double off = loc::two_packet_density(state, gamma, t, a, -a);
    const double expected = std::exp(-4.0 * gamma * t * a * a);
    rep.rows.push_back(gate("11a localization: off/diagonal peak-height ratio vs exp(-4 gamma t a^2)",
                            std::abs(off / diag - expected), 1e-10));

    bool bitwise = true;
    for (double x : {-1.3, 0.0, 0.7, 2.9}) {
        const Complex with_gamma = loc::plane_wave_density(1.1, 2.3, 5.0, 0.8, 1.7, x, x);
        const Complex without = loc::plane_wave_density(1.1, 2.3, 5.0, 0.0, 1.7, x, x);
        if (with_gamma != without) bitwise = false;
    }
    rep.rows.push_back(gate_flag("11b localization: plane-wave diagonal bitwise gamma-independent",
                                 bitwise, bitwise ? 0.0 : 1.0, 0.0));

    // weak-coupling per-particle factor: residual against the 2x2 product is
    // fourth order in the coupling angle
    double prev_diff = -1.0;
    bool fourth_order = true;
    for (double g : {0.1, 0.05, 0.025}) {
        const double diff = std::abs(loc::single_decoherence_factor(1.0, g, 0.5, -0.3, 2.0) -
                                     loc::weak_coupling_factor(1.0, g, 0.5, -0.3, 2.0));
        if (prev_diff > 0.0 && !(prev_diff / diff > 10.0 && prev_diff / diff < 24.0))
            fourth_order = false;
        prev_diff = diff;
    }
    rep.rows.push_back(gate_flag(
        "11c localization: weak-coupling factor residual is O(theta^4)", fourth_order, prev_diff,
        1.0, "coupling halvings shrink the 2x2-oracle gap ~16x"));

    // multi-period phase bookkeeping stays within its amplitude bound
    auto many = loc::LocalizationParams::uniform(4, 1.0, 0.1);
    many.omegas = {0.6, 1.0, 1.7, 2.4};
    double bound = 0.0;
    for (double w : many.omegas) bound += 1.0 / (M_PI * w * w);
    double worst_phase = 0.0;
    for (double t : {0.4, 1.9, 7.7})
        worst_phase = std::max(worst_phase, std::abs(loc::phase_function(many, t)));
    rep.rows.push_back(gate("11d localization: phase function within its bound", worst_phase, bound));
    return rep;
}

Report check_cross_cutting(Level level) {
    (void)level;
    Report rep;
    double worst_absf = 0.0;   // max(|F|) - 1 over everything sampled
    double worst_purity = 0.0;
    double worst_rho = 0.0;    // worst invariant violation across built matrices

    BranchDecomposition two;
    two.coefficients = ComplexVector(2);
    two.coefficients << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.5, 0.5);
    two.labels = {"plus", "minus"};

    auto absorb = [&](Complex f) {
        worst_absf = std::max(worst_absf, std::abs(f) - 1.0);
        ComplexMatrix overlaps(2, 2);
        overlaps << Complex(1, 0), std::conj(f), f, Complex(1, 0);
        const auto rho = reduced_density(two, overlaps);  // validates Hermitian/trace/PSD
        const double direct = purity(rho);
        double expected = 0.0;
        for (int i = 0; i < 2; ++i) expected += std::norm(two.coefficients(i)) * std::norm(two.coefficients(i));
        expected += 2.0 * std::norm(two.coefficients(0)) * std::norm(two.coefficients(1)) * std::norm(f);
        worst_purity = std::max(worst_purity, std::abs(direct - expected));
        worst_rho = std::max(worst_rho, (rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff());
    };

    const auto sgp = sg::SGParams::make(100.0, 1.0, 0.1, 1.0, M_PI / 3.0);
    for (double t : {0.0, 1.0, 3.0, 7.0, 15.0}) {
        absorb(Complex(sg::decoherence_factor(sgp, t), 0.0));
        absorb(Complex(sg::decoherence_factor_exact(sgp, t), 0.0));
    }
    const auto spp = spin_params(10, M_PI / 6.0);
    for (double t : {0.3, 1.1, 2.8}) absorb(spin::decoherence_factor_numeric(spp, t));

    cavity::CavityParams cav;
    cav.omega = 1.0;
    cav.M = 1.0;
    cav.Omega = 0.8;
    cav.g = 0.5;
    cav.n_trunc = 48;
    for (double t : {0.5, 2.0, 5.0}) {
        absorb(Complex(cavity::overlap_coherent(cav, 0, 2, t), 0.0));
        absorb(Complex(cavity::overlap_fock(cav, 0, 1, 4, t), 0.0));
    }

    const auto locp = loc::LocalizationParams::uniform(5, 1.3, 0.15);
    for (double t : {0.7, 1.9, 4.2}) {
        absorb(loc::total_decoherence_factor(locp, 0.6, -0.2, t, loc::CouplingMode::exact));
        absorb(loc::total_decoherence_factor(locp, 0.02, -0.01, t, loc::CouplingMode::weak));
    }

    // three-branch density built from the coherent-overlap Gaussian kernel
    BranchDecomposition three;
    three.coefficients = ComplexVector(3);
    three.coefficients << Complex(0.6, 0.0), Complex(0.0, 0.6), Complex(std::sqrt(0.28), 0.0);
    three.labels = {"n0", "n1", "n2"};
    ComplexMatrix f3(3, 3);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            f3(m, n) = Complex(cavity::overlap_coherent(cav, m, n, 1.7), 0.0);
    const auto rho3 = reduced_density(three, f3);
    worst_rho = std::max(worst_rho, std::abs(rho3.entries.trace().real() - 1.0));
    const double p3 = purity(rho3);
    double expected3 = 0.0;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            expected3 += std::norm(three.coefficients(m)) * std::norm(three.coefficients(n)) *
                         std::norm(f3(m, n));
    worst_purity = std::max(worst_purity, std::abs(p3 - expected3));

    rep.rows.push_back(gate("12a cross-cutting: max |F| - 1 over all sampled factors", worst_absf, 1e-10));
    rep.rows.push_back(gate("12b cross-cutting: reduced-density invariant residuals", worst_rho, 1e-12));
    rep.rows.push_back(gate("12c cross-cutting: purity identity residual", worst_purity, 1e-10));

    // large-mass regime: accumulated local phase deviates only at O(1/M),
    // while the packet width stays put per the spreading law
    {
        oracle::Grid1D grid;
        grid.x_min = -30.0;
        grid.x_max = 30.0;
        grid.n_points = 1024;
        auto linear = [](double x) { return 0.2 * x; };
        GaussianPacket pk;
        pk.width = 1.0;
        pk.mass = 200.0;
        const double d1 = oracle::large_mass_phase_check(grid, linear, pk.mass, 1.0, pk, 0.002);
        pk.mass = 400.0;
        const double d2 = oracle::large_mass_phase_check(grid, linear, pk.mass, 1.0, pk, 0.002);
        const bool halves = d1 / d2 > 1.6 && d1 / d2 < 2.4;
        rep.rows.push_back(gate_flag("12d oracle: large-mass phase deviation scales as 1/M", halves,
                                     d1 / d2, 2.0));
        pk.mass = 200.0;
        rep.rows.push_back(info("12e packet spreading w(t)/a over the same run",
                                free_packet_width(pk, 1.0) / pk.width));
    }
    return rep;
}

Report check_semiclassics(Level level) {
    (void)level;
    Report rep;
    // linearized factor vs direct quadrature of <exp(-i dF t x)> for the Gaussian
    const double sigma = 0.9, df = 1.7;
    double worst = 0.0;
    for (double t : {0.2, 0.6, 1.0}) {
        Complex quad(0.0, 0.0);
        const int n = 40001;
        const double lo = -12.0 / sigma, hi = 12.0 / sigma, h = (hi - lo) / (n - 1);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = lo + i * h;
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            const double dens = std::exp(-sigma * sigma * x * x);
            quad += w * dens * std::exp(-I * df * t * x);
            wsum += w * dens;
        }
        quad /= wsum;
        worst = std::max(worst,
                         std::abs(std::abs(quad) - semi::linearized_decoherence_factor(sigma, df, t)));
    }
    rep.rows.push_back(gate("s1 semiclassics: linearized factor vs Gaussian quadrature", worst, 1e-8));

    // RK4 fourth-order convergence on the harmonic oscillator
    auto harm = [](double x) { return 0.5 * x * x; };
    GaussianPacket pk;
    pk.center = 1.0;
    pk.momentum = 0.0;
    auto err_at = [&](double dt) {
        const auto path = semi::classical_trajectory(harm, pk, 2.0 * M_PI, dt);
        double worst_x = 0.0;
        for (std::size_t i = 0; i < path.times.size(); ++i)
            worst_x = std::max(worst_x, std::abs(path.positions[i] - std::cos(path.times[i])));
        return worst_x;
    };
    const double e1 = err_at(0.02), e2 = err_at(0.01);
    rep.rows.push_back(gate_flag("s2 semiclassics: RK4 halving dt shrinks error >= 12x",
                                 e1 / e2 >= 12.0, e1 / e2, 16.0));

    const double omega_c = semi::local_frequency(harm, 0.3, 1.0);
    const double force_c = -semi::induced_force(harm, 0.3) / 0.3;
    rep.rows.push_back(gate("s3 semiclassics: harmonic force/frequency consistency",
                            std::abs(force_c - omega_c * omega_c), 1e-6));
    return rep;
}

Report run_model(const std::string& model, Level level) {
    Report rep;
    if (model == "spin" || model == "all") {
        rep.append(check_spin_exactness(level));
        rep.append(check_spin_revivals(level));
        rep.append(check_spin_full_model(level));
    }
    if (model == "sg" || model == "all") {
        rep.append(check_sg_grid(level));
        rep.append(check_sg_decoherence_time(level));
        rep.append(check_sg_analytics(level));
    }
    if (model == "cavity" || model == "all") {
        rep.append(check_cavity_overlaps(level));
        rep.append(check_cavity_limit(level));
        rep.append(check_cavity_fock_decay(level));
    }
    if (model == "localize" || model == "all") {
        rep.append(check_localization_factorization(level));
        rep.append(check_localization_rate(level));
        rep.append(check_localization_densities(level));
    }
    if (model == "semiclassic" || model == "all") rep.append(check_semiclassics(level));
    if (model == "core" || model == "all") rep.append(check_cross_cutting(level));
    if (rep.rows.empty()) throw std::invalid_argument("verify: unknown model '" + model + "'");
    return rep;
}

Report run_all(Level level) { return run_model("all", level); }

std::string render(const Report& report) {
    std::ostringstream out;
    for (const Row& r : report.rows) {
        char buf[160];
        if (r.informational)
            std::snprintf(buf, sizeof(buf), "REPORT %-70s measured %.6g", r.criterion.c_str(),
                          r.measured);
        else
            std::snprintf(buf, sizeof(buf), "%s   %-70s measured %.6g tolerance %.3g",
                          r.pass ? "PASS" : "FAIL", r.criterion.c_str(), r.measured, r.tolerance);
        out << buf;
        if (!r.note.empty()) out << "   (" << r.note << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace decoh::verify
