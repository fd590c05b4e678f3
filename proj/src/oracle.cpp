#include "decoh/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace decoh::oracle {

namespace detail {

void fft(ComplexVector& data, bool inverse) {
    const Eigen::Index n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size not a power of two");
    // bit reversal permutation
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data(i), data(j));
    }
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / len;
        const Complex wl(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const Complex u = data(i + k);
                const Complex v = data(i + k + len / 2) * w;
                data(i + k) = u + v;
                data(i + k + len / 2) = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) data /= static_cast<double>(n);
}

}  // namespace detail

void Grid1D::validate() const {
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max <= x_min");
    if (n_points < 256 || (n_points & (n_points - 1)) != 0)
        throw std::invalid_argument("Grid1D: n_points must be a power of two >= 256");
}

double SpinorField::norm(const Grid1D& grid) const {
    return std::sqrt((up.squaredNorm() + down.squaredNorm()) * grid.dx());
}

SpinorField initial_spinor_packet(const Grid1D& grid, const sg::SGParams& params, Complex c_plus,
                                  Complex c_minus, const GaussianPacket& packet) {
    grid.validate();
    params.validate();
    packet.validate();
    SpinorField f;
    f.up.resize(grid.n_points);
    f.down.resize(grid.n_points);
    const double a = packet.width;
    const double norm = std::pow(2.0 * M_PI * a * a, -0.25);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        const double dx0 = x - packet.center;
        const Complex phi = norm * std::exp(-dx0 * dx0 / (4.0 * a * a) + I * packet.momentum * x);
        const auto [cp, cm] = sg::adiabatic_spinors(x, params.tilt, params.helix_k);
        f.up(i) = (c_plus * cp(0) + c_minus * cm(0)) * phi;
        f.down(i) = (c_plus * cp(1) + c_minus * cm(1)) * phi;
    }
    return f;
}

namespace {

void check_boundary_clearance(const Grid1D& grid, const SpinorField& f, double width_unit) {
    // support = region holding all but 1e-10 of the mass (per side); it must
    // stay >= 8 packet widths clear of each boundary
    const int n = grid.n_points;
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += std::norm(f.up(i)) + std::norm(f.down(i));
    const double tail = 1e-10 * total;

    double acc = 0.0;
    int lo = 0;
    for (; lo < n && acc < tail; ++lo) acc += std::norm(f.up(lo)) + std::norm(f.down(lo));
    acc = 0.0;
    int hi = n - 1;
    for (; hi >= 0 && acc < tail; --hi) acc += std::norm(f.up(hi)) + std::norm(f.down(hi));

    if (grid.point(lo) - grid.x_min < 8.0 * width_unit ||
        grid.x_max - grid.point(hi) < 8.0 * width_unit)
        throw std::runtime_error("grid_propagate: packet within 8 widths of the boundary");
}

}  // namespace

GridRun grid_propagate(const Grid1D& grid, const sg::SGParams& params, const SpinorField& initial,
                       double t_final, double dt,
                       const std::function<double(double)>& field_magnitude) {
    grid.validate();
    params.validate();
    if (!(dt > 0.0) || t_final < 0.0) throw std::invalid_argument("grid_propagate: bad times");
    const int n = grid.n_points;
    if (initial.up.size() != n || initial.down.size() != n)
        throw std::invalid_argument("grid_propagate: field size mismatch");

    // kinetic phases on the DFT frequency grid
    ComplexVector kin(n);
    const double dk = 2.0 * M_PI / (grid.x_max - grid.x_min);
    for (int i = 0; i < n; ++i) {
        const double k = dk * (i <= n / 2 ? i : i - n);
        kin(i) = std::exp(-I * k * k / (2.0 * params.mass) * (0.5 * dt));
    }

    // exact potential-step 2x2 exponentials: exp(-i dt B(x) mu (n(x).sigma))
    ComplexVector u11(n), u12(n), u21(n), u22(n);
    const double st = std::sin(params.tilt), ct = std::cos(params.tilt);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double b = field_magnitude ? field_magnitude(x) : params.field_gradient * x;
        const double ang = params.gyro * b * dt;  // mu B(x) dt
        const double c = std::cos(ang), s = std::sin(ang);
        const double nx = st * std::cos(params.helix_k * x), ny = st * std::sin(params.helix_k * x);
        u11(i) = Complex(c, -s * ct);
        u12(i) = -I * s * Complex(nx, -ny);
        u21(i) = -I * s * Complex(nx, ny);
        u22(i) = Complex(c, s * ct);
    }

    GridRun run;
    run.field = initial;
    const double norm0 = run.field.norm(grid);
    const long steps = std::lround(t_final / dt);
    auto kinetic_half = [&](SpinorField& f) {
        detail::fft(f.up, false);
        detail::fft(f.down, false);
        f.up.array() *= kin.array();
        f.down.array() *= kin.array();
        detail::fft(f.up, true);
        detail::fft(f.down, true);
    };
    for (long s = 0; s < steps; ++s) {
        kinetic_half(run.field);
        for (int i = 0; i < n; ++i) {
            const Complex a = run.field.up(i), b = run.field.down(i);
            run.field.up(i) = u11(i) * a + u12(i) * b;
            run.field.down(i) = u21(i) * a + u22(i) * b;
        }
        kinetic_half(run.field);
        if ((s & 63) == 0) check_boundary_clearance(grid, run.field, params.width);
    }
    check_boundary_clearance(grid, run.field, params.width);
    run.norm_drift = std::abs(run.field.norm(grid) - norm0);
    if (run.norm_drift > 1e-8)
        throw std::runtime_error("grid_propagate: norm drift exceeded 1e-8");
    return run;
}

BranchOverlap branch_overlap(const Grid1D& grid, const sg::SGParams& params,
                             const SpinorField& field) {
    const int n = grid.n_points;
    Complex ov(0.0, 0.0);
    double np = 0.0, nm = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [cp, cm] = sg::adiabatic_spinors(grid.point(i), params.tilt, params.helix_k);
        const Complex dp = std::conj(cp(0)) * field.up(i) + std::conj(cp(1)) * field.down(i);
        const Complex dm = std::conj(cm(0)) * field.up(i) + std::conj(cm(1)) * field.down(i);
        ov += std::conj(dp) * dm;
        np += std::norm(dp);
        nm += std::norm(dm);
    }
    BranchOverlap out;
    out.norm_plus = np * grid.dx();
    out.norm_minus = nm * grid.dx();
    out.overlap = ov * grid.dx() / std::sqrt(out.norm_plus * out.norm_minus);
    return out;
}

void DenseState::validate() const {
    Eigen::Index prod = 1;
    for (Eigen::Index d : dims) {
        if (d < 1) throw std::invalid_argument("DenseState: nonpositive dimension");
        prod *= d;
    }
    if (prod != amplitudes.size()) throw std::invalid_argument("DenseState: dimension mismatch");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("DenseState: not unit norm");
}

DenseState dense_evolve(const ComplexMatrix& hamiltonian, const DenseState& state, double t) {
    state.validate();
    const Eigen::Index n = hamiltonian.rows();
    if (n > 4096) throw std::invalid_argument("dense_evolve: dimension > 4096");
    if (hamiltonian.cols() != n || n != state.amplitudes.size())
        throw std::invalid_argument("dense_evolve: dimension mismatch");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("dense_evolve: Hamiltonian not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian);
    ComplexVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::exp(-I * es.eigenvalues()(i) * t);
    DenseState out = state;
    out.amplitudes = es.eigenvectors() *
                     (phases.array() * (es.eigenvectors().adjoint() * state.amplitudes).array())
                         .matrix();
    return out;
}

ReducedDensityMatrix partial_trace(const DenseState& state, std::size_t keep) {
    state.validate();
    if (keep >= state.dims.size()) throw std::out_of_range("partial_trace: bad subsystem index");
    Eigen::Index left = 1, right = 1;
    const Eigen::Index d = state.dims[keep];
    for (std::size_t i = 0; i < keep; ++i) left *= state.dims[i];
    for (std::size_t i = keep + 1; i < state.dims.size(); ++i) right *= state.dims[i];

    ReducedDensityMatrix rho;
    rho.entries = ComplexMatrix::Zero(d, d);
    // amplitude index = (l * d + m) * right + r
    for (Eigen::Index l = 0; l < left; ++l)
        for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index mp = 0; mp < d; ++mp)
                for (Eigen::Index r = 0; r < right; ++r)
                    rho.entries(m, mp) += state.amplitudes((l * d + m) * right + r) *
                                          std::conj(state.amplitudes((l * d + mp) * right + r));
    rho.entries = Complex(0.5, 0.0) * (rho.entries + rho.entries.adjoint()).eval();
    return rho;
}

double large_mass_phase_check(const Grid1D& grid, const std::function<double(double)>& potential,
                              double mass, double t, const GaussianPacket& packet, double dt) {
    grid.validate();
    packet.validate();
    if (!(mass > 0.0) || t < 0.0 || !(dt > 0.0))
        throw std::invalid_argument("large_mass_phase_check: bad arguments");
    if (t >= 2.0 * mass * packet.width * packet.width)
        throw std::runtime_error("large_mass_phase_check: outside the regime t << 2 M a^2");
    const int n = grid.n_points;

    ComplexVector psi(n), psi0(n);
    const double a = packet.width;
    const double nrm = std::pow(2.0 * M_PI * a * a, -0.25);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i), dx0 = x - packet.center;
        psi0(i) = nrm * std::exp(-dx0 * dx0 / (4.0 * a * a));
    }
    psi = psi0;

    ComplexVector kin(n), pot(n);
    const double dk = 2.0 * M_PI / (grid.x_max - grid.x_min);
    for (int i = 0; i < n; ++i) {
        const double k = dk * (i <= n / 2 ? i : i - n);
        kin(i) = std::exp(-I * k * k / (2.0 * mass) * (0.5 * dt));
        pot(i) = std::exp(-I * potential(grid.point(i)) * dt);
    }
    const long steps = std::lround(t / dt);
    for (long s = 0; s < steps; ++s) {
        detail::fft(psi, false);
        psi.array() *= kin.array();
        detail::fft(psi, true);
        psi.array() *= pot.array();
        detail::fft(psi, false);
        psi.array() *= kin.array();
        detail::fft(psi, true);
    }
    const double tact = steps * dt;
    double peak = psi0.cwiseAbs().maxCoeff();
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(psi0(i)) < 1e-6 * peak) continue;
        const Complex predicted = std::exp(-I * potential(grid.point(i)) * tact) * psi0(i);
        dev = std::max(dev, std::abs(psi(i) - predicted));
    }
    return dev / peak;
}

}  // namespace decoh::oracle
