#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Shared dense types and the model-independent data records.
// Units: natural units with hbar = 1 throughout the library.

namespace decoh {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex I{0.0, 1.0};

// Complex branch amplitudes c_n over uniquely labelled adiabatic branches.
// Invariant: sum |c_n|^2 = 1 (1e-12) and labels pairwise distinct.
struct BranchDecomposition {
    ComplexVector coefficients;
    std::vector<std::string> labels;

    void validate() const;
    Eigen::Index dim() const { return coefficients.size(); }
};

// Time series of decoherence-factor values F(t) for one model run.
// Invariants: strictly increasing times, |F| <= 1 + 1e-10.
struct DecoherenceTrace {
    std::vector<double> times;
    std::vector<Complex> values;
    std::string model_id;
    std::string params_digest;

    void validate() const;
};

// Quasi-classical Gaussian packet; `width` is the position-space width
// parameter a in <x|phi> ~ exp(-x^2/(4a^2)).
struct GaussianPacket {
    double center = 0.0;
    double momentum = 0.0;
    double width = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(width > 0.0)) throw std::invalid_argument("GaussianPacket: width must be > 0");
        if (!(mass > 0.0)) throw std::invalid_argument("GaussianPacket: mass must be > 0");
    }
};

// Hermitian, trace-one, positive matrix of the small system.
struct ReducedDensityMatrix {
    ComplexMatrix entries;

    Eigen::Index dim() const { return entries.rows(); }
    void validate() const;  // Hermiticity 1e-12, trace-1 1e-12, min eigenvalue >= -1e-10
};

}  // namespace decoh
