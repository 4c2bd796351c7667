#pragma once

#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/linalg.hpp"

namespace qdiss {

// One decay channel of a dissipator in diagonal form: rate h >= 0 and
// channel operator Q. The operator that multiplies the state from the left
// inside the sandwich term is Q^dagger.
struct Channel {
  double rate = 0.0;
  ComplexMatrix op;
};

// Open-system model with the dissipator in diagonal form:
//   d rho/dt = -i[H, rho]
//              - 1/2 sum_l h_l (Q_l Q_l^dag rho + rho Q_l Q_l^dag
//                               - 2 Q_l^dag rho Q_l)
// (hbar = 1). H must be hermitian and every channel operator the same size
// as H. Negative rates are legal: they describe generators that are not
// completely positive, which positivity_probe exists to expose.
class DiagonalModel {
 public:
  DiagonalModel(ComplexMatrix hamiltonian, std::vector<Channel> channels);

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Channel>& channels() const { return channels_; }
  Eigen::Index size() const { return hamiltonian_.rows(); }

  // True iff every rate is >= 0.
  bool completely_positive() const { return completely_positive_; }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<Channel> channels_;
  bool completely_positive_ = true;
};

// Open-system model with a general (non-diagonal) dissipator:
//   d rho/dt = -i[H, rho]
//              - 1/2 sum_{m,n} c_{nm} (L_m L_n^dag rho + rho L_m L_n^dag
//                                      - 2 L_n^dag rho L_m)
// The coefficient matrix c must be hermitian; each L_m traceless within
// 1e-9. c is not required to be positive semidefinite: indefinite
// coefficient matrices are exactly the generators whose short-time
// positivity failure the probe measures.
class GKSModel {
 public:
  GKSModel(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> ops,
           ComplexMatrix coeff);

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const ComplexMatrix& coeff() const { return coeff_; }
  Eigen::Index size() const { return hamiltonian_.rows(); }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> ops_;
  ComplexMatrix coeff_;
};

// Unitarily diagonalize the coefficient matrix c = V diag(h) V^dagger and
// rotate the operator set into decoupled channels Q_l = sum_m V*(m,l) L_m.
// Zero-rate channels are kept; eigenvalues within 1e-12 of zero are
// squashed to exactly 0, anything beyond that passes through with its
// sign.
DiagonalModel diagonalize_gks(const GKSModel& model);

// Right-hand side d rho/dt evaluated at `rho` (not required to be a valid
// state; any square matrix of matching size works, which is what the
// linearity checks rely on).
ComplexMatrix generator(const DiagonalModel& model, const ComplexMatrix& rho);
ComplexMatrix generator(const GKSModel& model, const ComplexMatrix& rho);

// One explicit Euler step rho + dt * generator(model, rho). No validity
// check on the result; callers that need a state re-validate.
ComplexMatrix step_euler(const DiagonalModel& model, const ComplexMatrix& rho,
                         double dt);

// The generator as a d^2 x d^2 matrix acting on row-major vectorized states,
// vec(rho)_{i*d+j} = rho(i,j).
ComplexMatrix vectorized_generator(const DiagonalModel& model);

enum class Method { rk4, exact };

struct EvolveOptions {
  Method method = Method::rk4;
  // Upper bound on the internal rk4 step; grid intervals are subdivided
  // into equal substeps no longer than this.
  double max_step = 1e-3;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

// Propagate `initial` through the master equation and record a snapshot at
// every grid time. The grid must start at exactly 0 and be strictly
// increasing. Every snapshot is validated; eigenvalues in [-kPsdTol, 0) are
// clamped to zero on read, anything below fails with the timestamp.
Trajectory evolve(const DiagonalModel& model, const DensityMatrix& initial,
                  const std::vector<double>& grid,
                  const EvolveOptions& options = {});

// Exact rate of change of tr(rho^q) under the dissipator alone:
//   d tr(rho^q)/dt = -q sum_{m,n,l} h_l |<m|Q_l|n>|^2 P_m (P_m^{q-1} - P_n^{q-1})
// evaluated in the eigenbasis rho = sum_m P_m |m><m|. Unitary terms never
// contribute. q = 1 returns exactly 0. Zero eigenvalues follow the limits
// that keep the sum finite: a term with P_m = 0 vanishes, and P_n^{q-1} is
// taken as 0 when P_n = 0.
double trace_power_rate(const DiagonalModel& model, const DensityMatrix& rho,
                        double q);

// trace_power_rate at q = 2.
double purity_rate(const DiagonalModel& model, const DensityMatrix& rho);

// Short-time transition weight out of a pure state psi0 into an orthogonal
// direction psi1:
//   dt * sum_l h_l |<psi0|Q_l|psi1>|^2
// Nonzero result means rank growth: a population appears along psi1 after
// one step of size dt. Throws if the two vectors are not orthogonal
// within 1e-9.
double positivity_probe(const DiagonalModel& model, const ComplexVector& psi0,
                        const ComplexVector& psi1, double dt);

}  // namespace qdiss
