#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/lindblad.hpp"
#include "qdiss/linalg.hpp"
#include "qdiss/states.hpp"

// Deterministic generators for property tests. Every test case seeds its
// own engine so cases stay order-independent.
namespace qdiss::testing {

inline ComplexMatrix random_matrix(std::mt19937& gen, Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(dist(gen), dist(gen));
    }
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& gen, Eigen::Index n) {
  const ComplexMatrix m = random_matrix(gen, n);
  return 0.5 * (m + m.adjoint().eval());
}

inline ComplexMatrix random_traceless(std::mt19937& gen, Eigen::Index n) {
  ComplexMatrix m = random_matrix(gen, n);
  m -= (m.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return m;
}

inline DensityMatrix random_density(std::mt19937& gen, std::vector<int> dims) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  const ComplexMatrix g = random_matrix(gen, n);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), std::move(dims));
}

// Random open-system model with O(1) operator norms, so that fixed-step
// integration at the default step keeps its accuracy budget.
inline GKSModel random_gks(std::mt19937& gen, Eigen::Index dim, int n_ops) {
  ComplexMatrix h = random_hermitian(gen, dim);
  h /= static_cast<double>(dim);
  const ComplexMatrix a = random_matrix(gen, n_ops);
  ComplexMatrix coeff = a * a.adjoint();
  coeff /= coeff.trace().real();
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<size_t>(n_ops));
  for (int i = 0; i < n_ops; ++i) {
    ops.push_back(random_traceless(gen, dim) /
                  std::sqrt(static_cast<double>(dim)));
  }
  return GKSModel(std::move(h), std::move(ops), std::move(coeff));
}

// Model with hermitian channel operators and non-negative rates: the
// regime where purity and the trace powers are monotone.
inline DiagonalModel random_hermitian_channel_model(std::mt19937& gen,
                                                    Eigen::Index dim,
                                                    int n_channels) {
  ComplexMatrix h = random_hermitian(gen, dim);
  h /= static_cast<double>(dim);
  std::uniform_real_distribution<double> rate(0.1, 1.0);
  std::vector<Channel> channels;
  channels.reserve(static_cast<size_t>(n_channels));
  for (int i = 0; i < n_channels; ++i) {
    ComplexMatrix op = random_hermitian(gen, dim);
    op /= static_cast<double>(dim);
    channels.push_back(Channel{rate(gen), std::move(op)});
  }
  return DiagonalModel(std::move(h), std::move(channels));
}

inline DiagonalModel dephasing_model(double h) {
  return DiagonalModel(ComplexMatrix::Zero(2, 2),
                       {Channel{h, pauli('z', 0, 1)}});
}

inline DiagonalModel amplitude_damping_model(double h) {
  return DiagonalModel(ComplexMatrix::Zero(2, 2),
                       {Channel{h, pauli('-', 0, 1)}});
}

inline DensityMatrix plus_state() {
  ComplexVector psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi, {2});
}

inline DensityMatrix bell_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi, {2, 2});
}

inline std::vector<double> linear_grid(double stop, int steps) {
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    grid.push_back(stop * static_cast<double>(i) / steps);
  }
  return grid;
}

}  // namespace qdiss::testing
