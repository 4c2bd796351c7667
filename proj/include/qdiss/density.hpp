#pragma once

#include <vector>

#include "qdiss/linalg.hpp"

namespace qdiss {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

// Outcome of checking the density-matrix invariants on a candidate matrix.
struct ValidationReport {
  double trace_deviation = 0.0;        // |tr(m) - 1|
  double hermiticity_deviation = 0.0;  // max entry of |m - m^dagger|
  double min_eigenvalue = 0.0;

  bool trace_ok = false;
  bool hermitian_ok = false;
  bool psd_ok = false;  // min eigenvalue >= -kPsdTol

  bool pass() const { return trace_ok && hermitian_ok && psd_ok; }
};

ValidationReport validate_density(const ComplexMatrix& m);

// Eigen-expansion rho = sum_m P_m |m><m|. Probabilities are clamped to
// [0, 1], renormalized to sum to one and sorted non-increasing; basis
// column m holds the eigenvector paired with probabilities[m].
struct ProbabilitySpectrum {
  std::vector<double> probabilities;
  ComplexMatrix basis;
};

// A validated quantum state on a tensor product of finite factors.
//
// Construction checks unit trace (within kTraceTol), hermiticity (within
// kHermitianTol) and positivity (eigenvalues >= -kPsdTol); violations throw
// ValidationError. Dimension bookkeeping errors throw PreconditionError.
// Factor 0 is the leftmost (most significant) tensor slot.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix data, std::vector<int> dims);

  // Rank-one state |psi><psi| from amplitudes in the flat tensor basis.
  // The amplitude vector must be normalized within 1e-9.
  static DensityMatrix from_pure(const ComplexVector& amplitudes,
                                 std::vector<int> dims);

  const ComplexMatrix& matrix() const { return data_; }
  const std::vector<int>& dims() const { return dims_; }
  Eigen::Index size() const { return data_.rows(); }

  // tr(rho^2)
  double purity() const;

  ProbabilitySpectrum spectrum() const;

  // Reduced state on the kept factors (order preserved).
  DensityMatrix marginal(const std::vector<int>& keep) const;

 private:
  ComplexMatrix data_;
  std::vector<int> dims_;
};

}  // namespace qdiss
