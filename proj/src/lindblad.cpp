#include "qdiss/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qdiss/errors.hpp"

namespace qdiss {

DiagonalModel::DiagonalModel(ComplexMatrix hamiltonian,
                             std::vector<Channel> channels)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {
  if (hamiltonian_.rows() != hamiltonian_.cols()) {
    throw PreconditionError("DiagonalModel: hamiltonian must be square");
  }
  if (hermiticity_deviation(hamiltonian_) > kHermitianTol) {
    throw PreconditionError("DiagonalModel: hamiltonian not hermitian");
  }
  for (const Channel& ch : channels_) {
    if (!std::isfinite(ch.rate)) {
      throw PreconditionError("DiagonalModel: channel rate is not finite");
    }
    if (ch.op.rows() != hamiltonian_.rows() ||
        ch.op.cols() != hamiltonian_.cols()) {
      throw PreconditionError(
          "DiagonalModel: channel operator size does not match hamiltonian");
    }
    if (ch.rate < 0.0) completely_positive_ = false;
  }
}

GKSModel::GKSModel(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> ops,
                   ComplexMatrix coeff)
    : hamiltonian_(std::move(hamiltonian)),
      ops_(std::move(ops)),
      coeff_(std::move(coeff)) {
  if (hamiltonian_.rows() != hamiltonian_.cols()) {
    throw PreconditionError("GKSModel: hamiltonian must be square");
  }
  if (hermiticity_deviation(hamiltonian_) > kHermitianTol) {
    throw PreconditionError("GKSModel: hamiltonian not hermitian");
  }
  const auto n = static_cast<Eigen::Index>(ops_.size());
  if (coeff_.rows() != n || coeff_.cols() != n) {
    throw PreconditionError(
        "GKSModel: coefficient matrix size does not match operator count");
  }
  for (const ComplexMatrix& op : ops_) {
    if (op.rows() != hamiltonian_.rows() || op.cols() != hamiltonian_.cols()) {
      throw PreconditionError(
          "GKSModel: operator size does not match hamiltonian");
    }
    if (std::abs(op.trace()) > 1e-9) {
      throw PreconditionError("GKSModel: operators must be traceless");
    }
  }
  if (n > 0 && hermiticity_deviation(coeff_) > kHermitianTol) {
    throw PreconditionError("GKSModel: coefficient matrix not hermitian");
  }
}

DiagonalModel diagonalize_gks(const GKSModel& model) {
  const auto n = static_cast<Eigen::Index>(model.ops().size());
  std::vector<Channel> channels;
  if (n > 0) {
    const HermitianEigenSystem sys = hermitian_eig(model.coeff());
    channels.reserve(static_cast<size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
      Channel ch;
      // Genuinely negative eigenvalues pass through (they mark a generator
      // that is not completely positive); only round-off noise on a PSD
      // coefficient matrix is squashed.
      ch.rate = std::abs(sys.eigenvalues(l)) < 1e-12 ? 0.0 : sys.eigenvalues(l);
      ch.op = ComplexMatrix::Zero(model.size(), model.size());
      // c = V diag(h) V^dag means c_{nm} = sum_l h_l V(n,l) V*(m,l), so the
      // channel operators are Q_l = sum_m V*(m,l) L_m.
      for (Eigen::Index m = 0; m < n; ++m) {
        ch.op += std::conj(sys.eigenvectors(m, l)) *
                 model.ops()[static_cast<size_t>(m)];
      }
      channels.push_back(std::move(ch));
    }
  }
  return DiagonalModel(model.hamiltonian(), std::move(channels));
}

ComplexMatrix generator(const DiagonalModel& model, const ComplexMatrix& rho) {
  if (rho.rows() != model.size() || rho.cols() != model.size()) {
    throw PreconditionError("generator: state size does not match model");
  }
  const Complex I(0.0, 1.0);
  const ComplexMatrix& h = model.hamiltonian();
  ComplexMatrix out = -I * (h * rho - rho * h);
  for (const Channel& ch : model.channels()) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix qdag = ch.op.adjoint();
    const ComplexMatrix qq = ch.op * qdag;
    out -= 0.5 * ch.rate * (qq * rho + rho * qq - 2.0 * (qdag * rho * ch.op));
  }
  return out;
}

ComplexMatrix generator(const GKSModel& model, const ComplexMatrix& rho) {
  if (rho.rows() != model.size() || rho.cols() != model.size()) {
    throw PreconditionError("generator: state size does not match model");
  }
  const Complex I(0.0, 1.0);
  const ComplexMatrix& h = model.hamiltonian();
  ComplexMatrix out = -I * (h * rho - rho * h);
  const auto& ops = model.ops();
  const auto n = static_cast<Eigen::Index>(ops.size());
  for (Eigen::Index m = 0; m < n; ++m) {
    const ComplexMatrix& lm = ops[static_cast<size_t>(m)];
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex c = model.coeff()(k, m);
      if (c == Complex(0.0, 0.0)) continue;
      const ComplexMatrix lkdag = ops[static_cast<size_t>(k)].adjoint();
      const ComplexMatrix prod = lm * lkdag;
      out -= 0.5 * c * (prod * rho + rho * prod - 2.0 * (lkdag * rho * lm));
    }
  }
  return out;
}

ComplexMatrix step_euler(const DiagonalModel& model, const ComplexMatrix& rho,
                         double dt) {
  return rho + dt * generator(model, rho);
}

ComplexMatrix vectorized_generator(const DiagonalModel& model) {
  const Eigen::Index d = model.size();
  const ComplexMatrix id = identity(d);
  const Complex I(0.0, 1.0);
  const ComplexMatrix& h = model.hamiltonian();
  // Row-major vectorization sends A X B to kron(A, B^T) vec(X).
  ComplexMatrix sup = -I * kron(h, id) + I * kron(id, h.transpose());
  for (const Channel& ch : model.channels()) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix qdag = ch.op.adjoint();
    const ComplexMatrix qq = ch.op * qdag;
    sup -= 0.5 * ch.rate *
           (kron(qq, id) + kron(id, qq.transpose()) -
            2.0 * kron(qdag, ch.op.transpose()));
  }
  return sup;
}

namespace {

ComplexMatrix rk4_step(const DiagonalModel& model, const ComplexMatrix& rho,
                       double dt) {
  const ComplexMatrix k1 = generator(model, rho);
  const ComplexMatrix k2 = generator(model, rho + 0.5 * dt * k1);
  const ComplexMatrix k3 = generator(model, rho + 0.5 * dt * k2);
  const ComplexMatrix k4 = generator(model, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Repair eigenvalues in [-kPsdTol, 0): project them to zero and rebuild.
// Anything below the tolerance is a real failure and is reported with the
// timestamp by the caller.
ComplexMatrix clamp_snapshot(const ComplexMatrix& m, double t) {
  ComplexMatrix herm = 0.5 * (m + m.adjoint().eval());
  if (hermiticity_deviation(m) > kHermitianTol) {
    throw ValidationError("evolve: snapshot at t = " + std::to_string(t) +
                          " lost hermiticity");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw ValidationError("evolve: snapshot at t = " + std::to_string(t) +
                          " has eigenvalue " + std::to_string(min_eig));
  }
  if (min_eig >= 0.0) return herm;
  RealVector fixed = solver.eigenvalues().cwiseMax(0.0);
  ComplexMatrix out = solver.eigenvectors() * fixed.asDiagonal() *
                      solver.eigenvectors().adjoint();
  return out;
}

Trajectory evolve_rk4(const DiagonalModel& model, const DensityMatrix& initial,
                      const std::vector<double>& grid, double max_step) {
  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  traj.states.push_back(initial);
  ComplexMatrix rho = initial.matrix();
  for (size_t i = 1; i < grid.size(); ++i) {
    const double span = grid[i] - grid[i - 1];
    const auto substeps =
        std::max<long>(1, static_cast<long>(std::ceil(span / max_step - 1e-12)));
    const double dt = span / static_cast<double>(substeps);
    for (long s = 0; s < substeps; ++s) rho = rk4_step(model, rho, dt);
    ComplexMatrix snap = clamp_snapshot(rho, grid[i]);
    traj.states.emplace_back(std::move(snap), initial.dims());
  }
  return traj;
}

Trajectory evolve_exact(const DiagonalModel& model,
                        const DensityMatrix& initial,
                        const std::vector<double>& grid) {
  const Eigen::Index d = model.size();
  const ComplexMatrix sup = vectorized_generator(model);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(sup);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("evolve: generator eigendecomposition failed");
  }
  // vec(rho(t)) = V exp(diag(w) t) c with V c = vec(rho(0)). A defective
  // generator shows up as a large residual in the solve.
  ComplexVector v0(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      v0(i * d + j) = initial.matrix()(i, j);
    }
  }
  const auto& vecs = solver.eigenvectors();
  const ComplexVector c = vecs.colPivHouseholderQr().solve(v0);
  const double residual = (vecs * c - v0).norm();
  if (residual > 1e-9 * std::max(1.0, v0.norm())) {
    throw ValidationError(
        "evolve: generator eigenbasis is numerically singular (residual " +
        std::to_string(residual) + ")");
  }
  const auto& w = solver.eigenvalues();

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  traj.states.push_back(initial);
  for (size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    ComplexVector vt = ComplexVector::Zero(d * d);
    for (Eigen::Index l = 0; l < d * d; ++l) {
      vt += c(l) * std::exp(w(l) * t) * vecs.col(l);
    }
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index cidx = 0; cidx < d; ++cidx) {
        m(r, cidx) = vt(r * d + cidx);
      }
    }
    ComplexMatrix snap = clamp_snapshot(m, t);
    traj.states.emplace_back(std::move(snap), initial.dims());
  }
  return traj;
}

}  // namespace

Trajectory evolve(const DiagonalModel& model, const DensityMatrix& initial,
                  const std::vector<double>& grid,
                  const EvolveOptions& options) {
  if (initial.size() != model.size()) {
    throw PreconditionError("evolve: state size does not match model");
  }
  if (grid.empty() || grid.front() != 0.0) {
    throw PreconditionError("evolve: time grid must start at 0");
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw PreconditionError("evolve: time grid must be strictly increasing");
    }
  }
  if (options.method == Method::rk4) {
    if (options.max_step <= 0.0) {
      throw PreconditionError("evolve: max_step must be positive");
    }
    return evolve_rk4(model, initial, grid, options.max_step);
  }
  return evolve_exact(model, initial, grid);
}

double trace_power_rate(const DiagonalModel& model, const DensityMatrix& rho,
                        double q) {
  if (rho.size() != model.size()) {
    throw PreconditionError("trace_power_rate: state size does not match model");
  }
  if (q <= 0.0) {
    throw PreconditionError("trace_power_rate: q must be positive");
  }
  if (q == 1.0) return 0.0;  // tr(rho) is conserved

  const ProbabilitySpectrum spec = rho.spectrum();
  const std::vector<double>& p = spec.probabilities;
  const Eigen::Index d = rho.size();
  // Populations below this are treated as exact zeros; p^{q-1} at p = 0 is
  // taken as 0, the limit that keeps the sum finite for pure states.
  constexpr double kZero = 1e-14;
  auto powq1 = [q](double v) { return v <= kZero ? 0.0 : std::pow(v, q - 1.0); };

  double rate = 0.0;
  for (const Channel& ch : model.channels()) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix qmat = spec.basis.adjoint() * ch.op * spec.basis;
    for (Eigen::Index m = 0; m < d; ++m) {
      const double pm = p[static_cast<size_t>(m)];
      if (pm <= kZero) continue;
      for (Eigen::Index n = 0; n < d; ++n) {
        const double w = std::norm(qmat(m, n));
        if (w == 0.0) continue;
        rate += ch.rate * w * pm *
                (powq1(pm) - powq1(p[static_cast<size_t>(n)]));
      }
    }
  }
  return -q * rate;
}

double purity_rate(const DiagonalModel& model, const DensityMatrix& rho) {
  return trace_power_rate(model, rho, 2.0);
}

double positivity_probe(const DiagonalModel& model, const ComplexVector& psi0,
                        const ComplexVector& psi1, double dt) {
  if (psi0.size() != model.size() || psi1.size() != model.size()) {
    throw PreconditionError("positivity_probe: vector size does not match model");
  }
  if (dt <= 0.0) {
    throw PreconditionError("positivity_probe: dt must be positive");
  }
  const double overlap = std::abs(psi0.dot(psi1));
  if (overlap > 1e-9 * psi0.norm() * psi1.norm()) {
    throw PreconditionError("positivity_probe: directions not orthogonal "
                            "(overlap " + std::to_string(overlap) + ")");
  }
  double weight = 0.0;
  for (const Channel& ch : model.channels()) {
    weight += ch.rate * std::norm(psi0.dot(ch.op * psi1));
  }
  return dt * weight;
}

}  // namespace qdiss
