#include "qdiss/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qdiss/errors.hpp"

namespace qdiss {

ValidationReport validate_density(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("validate_density: matrix must be square");
  }
  ValidationReport rep;
  rep.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  rep.hermiticity_deviation = hermiticity_deviation(m);
  rep.trace_ok = rep.trace_deviation <= kTraceTol;
  rep.hermitian_ok = rep.hermiticity_deviation <= kHermitianTol;
  if (rep.hermitian_ok) {
    // Eigenvalues of the hermitian part; only meaningful when the matrix
    // is hermitian to tolerance, which we just checked.
    ComplexMatrix h = 0.5 * (m + m.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h,
                                                        Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = solver.eigenvalues().minCoeff();
    rep.psd_ok = rep.min_eigenvalue >= -kPsdTol;
  } else {
    rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    rep.psd_ok = false;
  }
  return rep;
}

namespace {

void check_dims(const std::vector<int>& dims, Eigen::Index size) {
  if (dims.empty()) {
    throw PreconditionError("DensityMatrix: dims must be nonempty");
  }
  Eigen::Index prod = 1;
  for (int d : dims) {
    if (d < 2) {
      throw PreconditionError("DensityMatrix: every factor dim must be >= 2");
    }
    prod *= d;
  }
  if (prod != size) {
    throw PreconditionError("DensityMatrix: dims product " +
                            std::to_string(prod) + " does not match size " +
                            std::to_string(size));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix data, std::vector<int> dims)
    : data_(std::move(data)), dims_(std::move(dims)) {
  if (data_.rows() != data_.cols()) {
    throw PreconditionError("DensityMatrix: matrix must be square");
  }
  check_dims(dims_, data_.rows());
  const ValidationReport rep = validate_density(data_);
  if (!rep.hermitian_ok) {
    throw ValidationError("DensityMatrix: not hermitian (deviation " +
                          std::to_string(rep.hermiticity_deviation) + ")");
  }
  if (!rep.trace_ok) {
    throw ValidationError("DensityMatrix: trace deviates from 1 by " +
                          std::to_string(rep.trace_deviation));
  }
  if (!rep.psd_ok) {
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(rep.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& amplitudes,
                                       std::vector<int> dims) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw PreconditionError("from_pure: amplitudes not normalized (norm " +
                            std::to_string(norm) + ")");
  }
  ComplexMatrix m = amplitudes * amplitudes.adjoint();
  return DensityMatrix(std::move(m), std::move(dims));
}

double DensityMatrix::purity() const { return data_.squaredNorm(); }

ProbabilitySpectrum DensityMatrix::spectrum() const {
  HermitianEigenSystem sys = hermitian_eig(data_);
  ProbabilitySpectrum out;
  out.basis = std::move(sys.eigenvectors);
  out.probabilities.resize(static_cast<size_t>(sys.eigenvalues.size()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
    double v = sys.eigenvalues(i);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out.probabilities[static_cast<size_t>(i)] = v;
    sum += v;
  }
  // sum is within tolerance of 1 by construction; renormalize exactly so
  // downstream entropy formulas see a probability vector.
  for (double& v : out.probabilities) v /= sum;
  return out;
}

DensityMatrix DensityMatrix::marginal(const std::vector<int>& keep) const {
  ComplexMatrix reduced = partial_trace(data_, dims_, keep);
  std::vector<int> kept_sorted(keep);
  std::sort(kept_sorted.begin(), kept_sorted.end());
  std::vector<int> kept_dims;
  kept_dims.reserve(kept_sorted.size());
  for (int f : kept_sorted) kept_dims.push_back(dims_[static_cast<size_t>(f)]);
  return DensityMatrix(std::move(reduced), std::move(kept_dims));
}

}  // namespace qdiss
