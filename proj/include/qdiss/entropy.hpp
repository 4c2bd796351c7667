#pragma once

#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/lindblad.hpp"

namespace qdiss {

// Entropic index q > 0. q = 1 selects the von Neumann limit.
class TsallisIndex {
 public:
  TsallisIndex(double q);  // NOLINT: implicit by design, 2.0 reads as an index

  double value() const { return value_; }
  bool is_von_neumann() const { return value_ == 1.0; }

 private:
  double value_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

// S_q(p) = (1 - sum_i p_i^q) / (q - 1), with the q -> 1 limit
// S_1(p) = -sum_i p_i ln p_i. Probabilities below 1e-14 are treated as
// exact zeros so that eigenvalue noise cannot leak into small-q sums.
double tsallis_entropy(const std::vector<double>& p, TsallisIndex q);

// The q-indexed ticks entanglement detection sweeps over.
std::vector<double> default_q_grid();

struct ConditionalEntropyResult {
  double value = 0.0;  // the conditional entropy itself
  double q = 0.0;
  std::vector<int> conditioned_on;
  // Diagnostic split of the defining ratio: numerator is the plain entropy
  // difference S_q(joint) - S_q(conditioned marginal), denominator the
  // escort normalizer sum_i p_i^q of the marginal (= 1 at q = 1).
  double numerator = 0.0;
  double denominator = 0.0;
};

// Conditional Tsallis entropy of the remaining parties given the marginal
// on `condition_on`:
//   S_q(rest | cond) = (S_q(joint) - S_q(cond)) / (1 + (1 - q) S_q(cond))
// The denominator equals sum_i p_i^q of the conditioned marginal, which is
// strictly positive, so the ratio is always defined. Large q is evaluated
// through max-eigenvalue-scaled power sums in extended precision; the
// naive ratio of double-precision entropies underflows near q ~ 10^3.
// `condition_on` must be a nonempty strict subset of the parties.
ConditionalEntropyResult conditional_q_entropy(const DensityMatrix& joint,
                                               const std::vector<int>& condition_on,
                                               TsallisIndex q);

// Sign of the conditional entropy in the q -> infinity limit, where only
// the largest eigenvalues survive:
//   negative  if lambda_max(joint) > lambda_max(marginal)
//   positive  if lambda_max(marginal) > lambda_max(joint)
// Ties within 1e-9 fall through to multiplicity: more joint eigenvalues at
// the top means negative, more marginal ones positive, equal counts zero.
Sign conditional_sign_at_infinity(const DensityMatrix& joint,
                                  const std::vector<int>& condition_on);

// d S_q(rho(t))/dt under the dissipator of `model`, evaluated exactly from
// the state's eigensystem (no finite differencing). For q != 1 this is
// -trace_power_rate / (q - 1); at q = 1 it is the von Neumann rate
//   sum_{m,n,l} h_l |<m|Q_l|n>|^2 P_m (ln P_m - ln P_n),
// which genuinely diverges on rank-deficient states; logarithms are floored
// at ln(1e-14).
double tsallis_rate(const DiagonalModel& model, const DensityMatrix& rho,
                    TsallisIndex q);

}  // namespace qdiss
