#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/entropy.hpp"
#include "qdiss/lindblad.hpp"
#include "qdiss/states.hpp"

namespace qdiss {

// Values above -kDetectionTol count as non-negative: the criterion only
// fires on a clearly negative conditional entropy.
inline constexpr double kDetectionTol = 1e-10;

// Entangled 2-qubit marginals split into robust (R) and barely-robust (r)
// by comparing |ppt_min_eigenvalue| against this.
inline constexpr double kRobustnessTau = 0.1;

struct EntanglementVerdict {
  bool detected_by_q_criterion = false;
  // Smallest grid q whose conditional entropy is negative; +infinity when
  // only the q -> infinity sign fires; empty when not detected.
  std::optional<double> witness_q;
  // Minimum of the conditional entropy over the finite grid points.
  double min_conditional_value = 0.0;
  Sign infinity_sign = Sign::zero;
  // Partial-transpose oracle, filled only when the state is two qubits.
  std::optional<double> ppt_min_eigenvalue;
  std::vector<int> condition_on;
  std::vector<int> remainder;
};

// Sweep the conditional q-entropy of the remainder given `condition_on`
// over the grid plus the q -> infinity sign. Detected means some value
// drops below -kDetectionTol or the infinity sign is negative. This
// criterion is sufficient, not necessary: some entangled states pass it.
EntanglementVerdict detect(const DensityMatrix& rho,
                           const std::vector<int>& condition_on,
                           const std::vector<double>& q_grid = default_q_grid());

// Minimum eigenvalue of the partial transpose on the second qubit.
// Negative if and only if the state is entangled (dims must be [2, 2];
// the equivalence is special to that size).
double ppt_min_eigenvalue(const DensityMatrix& rho);

// Critical mixing weight of the family's detect outcome, located by
// bisection in x to within tol. An empty condition set defaults to the
// first parties-1 slots. Throws ValidationError when detection does not
// separate x = 0 from x = 1.
double threshold_scan(WernerParams family, std::vector<int> condition_on,
                      const std::vector<double>& q_grid = default_q_grid(),
                      double tol = 1e-4);

enum class Symmetry { S, AS, NS };

std::string to_string(Symmetry s);
std::string to_string(Sign s);

// Behavior of a pure state under exchanging parties a and b: S when the
// swapped vector equals the original within 1e-10, AS when it equals its
// negative, NS otherwise. The two parties must have equal dimension.
Symmetry symmetry_label(const ComplexVector& psi, const std::vector<int>& dims,
                        int party_a, int party_b);

// Mixed-state version: S when swap conjugation fixes rho and rho lives on
// the symmetric subspace, AS when it lives on the antisymmetric subspace,
// NS otherwise.
Symmetry symmetry_label(const DensityMatrix& rho, int party_a, int party_b);

// Pairwise swap labels of a pure state folded into one annotation: S over
// all parties when every pair is symmetric, otherwise AS (then S) over the
// parties of the pairs realizing that label, NS when no pair has one.
struct SymmetrySummary {
  Symmetry label = Symmetry::NS;
  std::vector<int> parties;
};

SymmetrySummary full_symmetry(const ComplexVector& psi,
                              const std::vector<int>& dims);

struct MarginalClassification {
  std::pair<int, int> pair;
  Symmetry symmetry;       // of the full pure state under this pair swap
  char robustness = 'F';   // 'R', 'r', or 'F'
  double ppt_min_eigenvalue = 0.0;
  // The entropy criterion on the marginal itself, for comparison with the
  // exact oracle; it misses some entangled marginals.
  bool q_criterion_detected = false;
  double min_conditional_value = 0.0;
};

struct ClassificationRow {
  std::string label;
  std::array<MarginalClassification, 3> marginals;  // AB, AC, BC
  SymmetrySummary full;
};

// Robustness taxonomy of one catalog state: for each 2-party marginal,
// F when the partial-transpose oracle sees no entanglement
// (ppt_min_eigenvalue >= -kDetectionTol), else R or r by kRobustnessTau.
ClassificationRow classify_three_qubit(const std::string& label);

struct DetectionTransition {
  double t_before = 0.0;  // last grid time with the old verdict
  double t_after = 0.0;   // first grid time with the new verdict
  bool to_detected = false;
};

struct EntanglementTimeline {
  std::vector<double> times;
  std::vector<EntanglementVerdict> verdicts;
  std::vector<DetectionTransition> transitions;
};

// Evolve rho0 through the model and run detect on every snapshot;
// transitions bracket each flip of the detected flag between neighboring
// grid times.
EntanglementTimeline track(const DiagonalModel& model,
                           const DensityMatrix& rho0,
                           const std::vector<double>& times,
                           const std::vector<int>& condition_on,
                           const std::vector<double>& q_grid = default_q_grid(),
                           const EvolveOptions& options = {});

}  // namespace qdiss
