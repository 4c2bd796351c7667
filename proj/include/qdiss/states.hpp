#pragma once

#include <string>
#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/linalg.hpp"

namespace qdiss {

// sigma_x / sigma_y / sigma_z or a ladder operator
// sigma_+ = (sigma_x + i sigma_y)/2, sigma_- = (sigma_x - i sigma_y)/2
// acting on one slot of an n-qubit register, identity on the others.
// Axis characters: 'x', 'y', 'z', '+', '-'. Basis |0> = up, |1> = down.
ComplexMatrix pauli(char axis, int party, int n_parties);

// Family of isotropic mixtures on `parties` subsystems with `levels` levels
// each, interpolating between the maximally mixed state (x = 0) and the
// maximally entangled |Psi> = sum_i |i...i>/sqrt(levels) (x = 1).
struct WernerParams {
  double x = 0.0;
  int levels = 2;
  int parties = 2;
};

// (1-x)/levels^parties * identity + x |Psi><Psi|. Requires x in [0, 1],
// levels >= 2, parties >= 2.
DensityMatrix werner(const WernerParams& params);

// Critical mixing weight 1/(1 + levels^(parties-1)): the family is
// entangled exactly for x above this value.
double werner_threshold(int levels, int parties);

// A named state of three spin-1/2 parties A, B, C. Basis order |abc> with
// |0> = up; flat index 4a + 2b + c.
struct ThreeQubitState {
  std::string label;
  ComplexVector amplitudes;  // 8 entries, unit norm

  DensityMatrix density() const;
};

// The catalog: Q1/Q2/D1/D2 with +/- suffix, the combinations
// GHZ+- = (Q1+ +- Q1-)/sqrt(2), and the classification-row synonyms
// GFF+- (= GHZ+-), GFR+- (= D2+-), WRR+- (= Q2+-), WRr+- (= D1+-).
// The returned label echoes the requested one. Unknown labels throw.
ThreeQubitState three_qubit(const std::string& label);

// The eight classification-table row states, in table order.
std::vector<std::string> three_qubit_labels();

// sigma_A.sigma_B + sigma_A.sigma_C + (1/2) sigma_B.sigma_C on three
// qubits (Pauli-vector dot products). The 1/2 sits on the BC bond only;
// that asymmetry is what splits the spectrum into 5/2 (x4), -3/2 (x2),
// -7/2 (x2), with the catalog states as eigenvectors.
ComplexMatrix heisenberg_3spin();

}  // namespace qdiss
