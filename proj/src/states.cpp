#include "qdiss/states.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "qdiss/errors.hpp"

namespace qdiss {

ComplexMatrix pauli(char axis, int party, int n_parties) {
  if (n_parties < 1) {
    throw PreconditionError("pauli: n_parties must be >= 1");
  }
  if (party < 0 || party >= n_parties) {
    throw PreconditionError("pauli: party index out of range");
  }
  ComplexMatrix s(2, 2);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case 'x':
      s << 0, 1, 1, 0;
      break;
    case 'y':
      s << 0, -i, i, 0;
      break;
    case 'z':
      s << 1, 0, 0, -1;
      break;
    case '+':
      s << 0, 1, 0, 0;
      break;
    case '-':
      s << 0, 0, 1, 0;
      break;
    default:
      throw PreconditionError(std::string("pauli: unknown axis '") + axis +
                              "'");
  }
  ComplexMatrix out = identity(1);
  for (int p = 0; p < n_parties; ++p) {
    out = kron(out, p == party ? s : identity(2));
  }
  return out;
}

DensityMatrix werner(const WernerParams& params) {
  if (params.x < 0.0 || params.x > 1.0) {
    throw PreconditionError("werner: x must lie in [0, 1]");
  }
  if (params.levels < 2) {
    throw PreconditionError("werner: levels must be >= 2");
  }
  if (params.parties < 2) {
    throw PreconditionError("werner: parties must be >= 2");
  }
  Eigen::Index dim = 1;
  for (int p = 0; p < params.parties; ++p) dim *= params.levels;

  ComplexVector psi = ComplexVector::Zero(dim);
  // |i...i> has flat index i * (levels^(parties-1) + ... + 1)
  Eigen::Index diag_stride = 0;
  Eigen::Index stride = 1;
  for (int p = 0; p < params.parties; ++p) {
    diag_stride += stride;
    stride *= params.levels;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(params.levels));
  for (int i = 0; i < params.levels; ++i) {
    psi(static_cast<Eigen::Index>(i) * diag_stride) = amp;
  }

  ComplexMatrix m = ((1.0 - params.x) / static_cast<double>(dim)) *
                        ComplexMatrix::Identity(dim, dim) +
                    params.x * (psi * psi.adjoint());
  return DensityMatrix(std::move(m),
                       std::vector<int>(static_cast<size_t>(params.parties),
                                        params.levels));
}

double werner_threshold(int levels, int parties) {
  if (levels < 2 || parties < 2) {
    throw PreconditionError("werner_threshold: levels and parties must be >= 2");
  }
  return 1.0 / (1.0 + std::pow(static_cast<double>(levels), parties - 1));
}

DensityMatrix ThreeQubitState::density() const {
  return DensityMatrix::from_pure(amplitudes, {2, 2, 2});
}

namespace {

ComplexVector basis8(std::initializer_list<std::pair<int, double>> terms) {
  ComplexVector v = ComplexVector::Zero(8);
  for (const auto& [idx, amp] : terms) v(idx) = amp;
  v.normalize();
  return v;
}

const std::map<std::string, ComplexVector>& catalog() {
  // Flat index 4a + 2b + c, |0> = up. Minus-branch states are the global
  // spin flips of the plus branch.
  static const std::map<std::string, ComplexVector> states = [] {
    std::map<std::string, ComplexVector> m;
    m["Q1+"] = basis8({{0, 1.0}});
    m["Q1-"] = basis8({{7, 1.0}});
    m["Q2+"] = basis8({{1, 1.0}, {2, 1.0}, {4, 1.0}});
    m["Q2-"] = basis8({{6, 1.0}, {5, 1.0}, {3, 1.0}});
    m["D1+"] = basis8({{1, 1.0}, {2, 1.0}, {4, -2.0}});
    m["D1-"] = basis8({{6, 1.0}, {5, 1.0}, {3, -2.0}});
    m["D2+"] = basis8({{1, 1.0}, {2, -1.0}});
    m["D2-"] = basis8({{6, 1.0}, {5, -1.0}});
    m["GHZ+"] = basis8({{0, 1.0}, {7, 1.0}});
    m["GHZ-"] = basis8({{0, 1.0}, {7, -1.0}});
    return m;
  }();
  return states;
}

std::string resolve_alias(const std::string& label) {
  static const std::map<std::string, std::string> aliases = {
      {"GFF+", "GHZ+"}, {"GFF-", "GHZ-"}, {"GFR+", "D2+"}, {"GFR-", "D2-"},
      {"WRR+", "Q2+"},  {"WRR-", "Q2-"},  {"WRr+", "D1+"}, {"WRr-", "D1-"},
  };
  const auto it = aliases.find(label);
  return it == aliases.end() ? label : it->second;
}

}  // namespace

ThreeQubitState three_qubit(const std::string& label) {
  const auto& states = catalog();
  const auto it = states.find(resolve_alias(label));
  if (it == states.end()) {
    throw PreconditionError("three_qubit: unknown label '" + label + "'");
  }
  return ThreeQubitState{label, it->second};
}

std::vector<std::string> three_qubit_labels() {
  return {"GHZ+", "GHZ-", "GFR+", "GFR-", "WRr+", "WRr-", "WRR+", "WRR-"};
}

ComplexMatrix heisenberg_3spin() {
  auto bond = [](int p1, int p2, double weight) {
    ComplexMatrix sum = ComplexMatrix::Zero(8, 8);
    for (char axis : {'x', 'y', 'z'}) {
      sum += pauli(axis, p1, 3) * pauli(axis, p2, 3);
    }
    return (weight * sum).eval();
  };
  return bond(0, 1, 1.0) + bond(0, 2, 1.0) + bond(1, 2, 0.5);
}

}  // namespace qdiss
