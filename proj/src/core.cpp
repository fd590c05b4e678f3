#include "decoh/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <set>

namespace decoh {

void BranchDecomposition::validate() const {
    if (coefficients.size() == 0) throw std::invalid_argument("BranchDecomposition: empty");
    if (static_cast<Eigen::Index>(labels.size()) != coefficients.size())
        throw std::invalid_argument("BranchDecomposition: label/coefficient count mismatch");
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size())
        throw std::invalid_argument("BranchDecomposition: labels must be unique");
    const double norm2 = coefficients.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("BranchDecomposition: sum |c_n|^2 != 1");
}

void DecoherenceTrace::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("DecoherenceTrace: size mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("DecoherenceTrace: times must be strictly increasing");
    for (const Complex& v : values)
        if (std::abs(v) > 1.0 + 1e-10)
            throw std::invalid_argument("DecoherenceTrace: |F| exceeds 1");
}

void ReducedDensityMatrix::validate() const {
    const Eigen::Index n = entries.rows();
    if (n == 0 || entries.cols() != n)
        throw std::invalid_argument("ReducedDensityMatrix: not square");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("ReducedDensityMatrix: not Hermitian");
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > 1e-12)
        throw std::invalid_argument("ReducedDensityMatrix: trace != 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("ReducedDensityMatrix: negative eigenvalue");
}

ReducedDensityMatrix reduced_density(const BranchDecomposition& branch,
                                     const ComplexMatrix& overlaps) {
    branch.validate();
    const Eigen::Index n = branch.dim();
    if (overlaps.rows() != n || overlaps.cols() != n)
        throw std::invalid_argument("reduced_density: overlap matrix dimension mismatch");
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(overlaps(i, i) - Complex(1.0, 0.0)) > 1e-10)
            throw std::invalid_argument("reduced_density: F[n][n] != 1");
    if ((overlaps - overlaps.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("reduced_density: overlaps not Hermitian");

    ReducedDensityMatrix rho;
    rho.entries.resize(n, n);
    const ComplexVector& c = branch.coefficients;
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k)
            rho.entries(m, k) = (m == k) ? Complex(std::norm(c(m)), 0.0)
                                         : c(m) * std::conj(c(k)) * overlaps(k, m);
    // symmetrize away the last-bit Hermiticity error
    rho.entries = Complex(0.5, 0.0) * (rho.entries + rho.entries.adjoint()).eval();
    rho.validate();
    return rho;
}

double purity(const ReducedDensityMatrix& rho) {
    rho.validate();
    return (rho.entries * rho.entries).trace().real();
}

double free_packet_width(const GaussianPacket& packet, double t) {
    packet.validate();
    if (t < 0.0) throw std::invalid_argument("free_packet_width: t must be >= 0");
    const double a = packet.width, M = packet.mass;
    const double r = t / (2.0 * M * a * a);
    return a * std::sqrt(1.0 + r * r);
}

}  // namespace decoh
