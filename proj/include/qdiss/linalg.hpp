#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qdiss {

using Complex = std::complex<double>;
// Row-major dense storage throughout; every system handled here is small
// (dimension <= a few dozen), so dense algorithms are the right tool.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

// Max entrywise |m - m^dagger|. Input must be square.
double hermiticity_deviation(const ComplexMatrix& m);

ComplexMatrix identity(Eigen::Index n);

// Kronecker product of square matrices; `a` occupies the leftmost
// (most significant) tensor slot:
//   kron(a, b)(i*db + k, j*db + l) = a(i, j) * b(k, l)
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigen-decomposition m = V diag(w) V^dagger of a hermitian matrix.
// Eigenvalues are sorted non-increasing; eigenvectors are the matching
// orthonormal columns of V.
struct HermitianEigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

// Requires hermiticity within kHermitianTol (max entry deviation).
HermitianEigenSystem hermitian_eig(const ComplexMatrix& m);

// Trace out the tensor factors not listed in `keep`.
//
// Subsystem convention, used everywhere in this library: factor 0 is the
// leftmost tensor slot (party A), and a flat index decomposes as
//   i = sum_f i_f * stride_f,   stride_f = prod_{g > f} dims[g].
// `keep` must be a nonempty subset of {0, ..., dims.size()-1}; kept factors
// retain their original order. Keeping every factor is the identity map.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

}  // namespace qdiss
