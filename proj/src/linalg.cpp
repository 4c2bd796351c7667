#include "qdiss/linalg.hpp"

#include <algorithm>
#include <string>

#include "qdiss/errors.hpp"

namespace qdiss {

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("hermiticity_deviation: matrix must be square");
  }
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw PreconditionError("kron: both factors must be square");
  }
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < db; ++k) {
      for (Eigen::Index j = 0; j < da; ++j) {
        for (Eigen::Index l = 0; l < db; ++l) {
          out(i * db + k, j * db + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

HermitianEigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("hermitian_eig: matrix must be square");
  }
  if (!m.allFinite()) {
    throw PreconditionError("hermitian_eig: matrix has non-finite entries");
  }
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTol) {
    throw PreconditionError("hermitian_eig: input not hermitian (deviation " +
                            std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eig: eigensolver did not converge");
  }
  HermitianEigenSystem sys;
  // Eigen sorts ascending; the library convention is non-increasing.
  sys.eigenvalues = solver.eigenvalues().reverse();
  sys.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return sys;
}

namespace {

// Flat-index offsets contributed by one factor group, enumerated in
// row-major order over that group.
std::vector<Eigen::Index> group_offsets(const std::vector<int>& dims,
                                        const std::vector<Eigen::Index>& strides,
                                        const std::vector<int>& group) {
  Eigen::Index count = 1;
  for (int f : group) count *= dims[static_cast<size_t>(f)];
  std::vector<Eigen::Index> offsets(static_cast<size_t>(count));
  for (Eigen::Index flat = 0; flat < count; ++flat) {
    Eigen::Index rem = flat;
    Eigen::Index off = 0;
    for (auto it = group.rbegin(); it != group.rend(); ++it) {
      const Eigen::Index d = dims[static_cast<size_t>(*it)];
      off += (rem % d) * strides[static_cast<size_t>(*it)];
      rem /= d;
    }
    offsets[static_cast<size_t>(flat)] = off;
  }
  return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("partial_trace: matrix must be square");
  }
  if (dims.empty()) throw PreconditionError("partial_trace: empty dims");
  Eigen::Index prod = 1;
  for (int d : dims) {
    if (d < 1) throw PreconditionError("partial_trace: factor dims must be >= 1");
    prod *= d;
  }
  if (prod != m.rows()) {
    throw PreconditionError("partial_trace: dims product " + std::to_string(prod) +
                            " does not match matrix size " + std::to_string(m.rows()));
  }
  if (keep.empty()) throw PreconditionError("partial_trace: keep must be nonempty");

  std::vector<int> kept(keep);
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw PreconditionError("partial_trace: duplicate factor in keep");
  }
  const int n = static_cast<int>(dims.size());
  if (kept.front() < 0 || kept.back() >= n) {
    throw PreconditionError("partial_trace: keep index out of range");
  }

  std::vector<int> traced;
  for (int f = 0; f < n; ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }

  std::vector<Eigen::Index> strides(static_cast<size_t>(n), 1);
  for (int f = n - 2; f >= 0; --f) {
    strides[static_cast<size_t>(f)] =
        strides[static_cast<size_t>(f + 1)] * dims[static_cast<size_t>(f + 1)];
  }

  const auto keep_off = group_offsets(dims, strides, kept);
  const auto tr_off = group_offsets(dims, strides, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (const Eigen::Index t : tr_off) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      for (Eigen::Index j = 0; j < dk; ++j) {
        out(i, j) += m(keep_off[static_cast<size_t>(i)] + t,
                       keep_off[static_cast<size_t>(j)] + t);
      }
    }
  }
  return out;
}

}  // namespace qdiss
