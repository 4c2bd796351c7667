#include "qdiss/entropy.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "qdiss/errors.hpp"

namespace qdiss {

namespace {
constexpr double kZeroProb = 1e-14;
}

TsallisIndex::TsallisIndex(double q) : value_(q) {
  if (!std::isfinite(q) || q <= 0.0) {
    throw PreconditionError("TsallisIndex: q must be finite and positive, got " +
                            std::to_string(q));
  }
}

double tsallis_entropy(const std::vector<double>& p, TsallisIndex q) {
  if (q.is_von_neumann()) {
    double s = 0.0;
    for (double v : p) {
      if (v > kZeroProb) s -= v * std::log(v);
    }
    return s;
  }
  double power_sum = 0.0;
  for (double v : p) {
    if (v > kZeroProb) power_sum += std::pow(v, q.value());
  }
  return (1.0 - power_sum) / (q.value() - 1.0);
}

std::vector<double> default_q_grid() {
  return {0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0};
}

namespace {

void check_condition_set(const std::vector<int>& condition_on, size_t parties) {
  if (condition_on.empty()) {
    throw PreconditionError("conditional entropy: condition set is empty");
  }
  std::vector<int> sorted(condition_on);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("conditional entropy: duplicate party in condition set");
  }
  if (sorted.front() < 0 || sorted.back() >= static_cast<int>(parties)) {
    throw PreconditionError("conditional entropy: party index out of range");
  }
  if (sorted.size() >= parties) {
    throw PreconditionError(
        "conditional entropy: condition set must leave at least one party");
  }
}

// sum_i (p_i / scale)^q over entries above the zero threshold, in extended
// precision. The scale factor cancels between numerator and denominator of
// the conditional-entropy ratio.
long double scaled_power_sum(const std::vector<double>& p, double q,
                             long double scale) {
  long double s = 0.0L;
  for (double v : p) {
    if (v > kZeroProb) s += std::pow(static_cast<long double>(v) / scale,
                                     static_cast<long double>(q));
  }
  return s;
}

}  // namespace

ConditionalEntropyResult conditional_q_entropy(const DensityMatrix& joint,
                                               const std::vector<int>& condition_on,
                                               TsallisIndex q) {
  check_condition_set(condition_on, joint.dims().size());
  const std::vector<double> pj = joint.spectrum().probabilities;
  const std::vector<double> pm =
      joint.marginal(condition_on).spectrum().probabilities;

  ConditionalEntropyResult res;
  res.q = q.value();
  res.conditioned_on = condition_on;

  if (q.is_von_neumann()) {
    res.numerator = tsallis_entropy(pj, q) - tsallis_entropy(pm, q);
    res.denominator = 1.0;
    res.value = res.numerator;
    return res;
  }

  // Spectra are sorted non-increasing, so the global scale is the larger of
  // the two leading eigenvalues; both power sums then stay representable
  // for any q on the grid.
  const long double scale =
      std::max<long double>(pj.front(), pm.front());
  const long double a = scaled_power_sum(pm, q.value(), scale);
  const long double b = scaled_power_sum(pj, q.value(), scale);
  res.value = static_cast<double>((a - b) / ((q.value() - 1.0L) * a));

  res.numerator = tsallis_entropy(pj, q) - tsallis_entropy(pm, q);
  const long double denom =
      scaled_power_sum(pm, q.value(), 1.0L);  // sum_i p_i^q, unscaled
  res.denominator = static_cast<double>(std::max<long double>(denom, DBL_MIN));
  return res;
}

Sign conditional_sign_at_infinity(const DensityMatrix& joint,
                                  const std::vector<int>& condition_on) {
  check_condition_set(condition_on, joint.dims().size());
  const std::vector<double> pj = joint.spectrum().probabilities;
  const std::vector<double> pm =
      joint.marginal(condition_on).spectrum().probabilities;
  constexpr double kTieTol = 1e-9;

  const double top_j = pj.front();
  const double top_m = pm.front();
  if (top_m - top_j > kTieTol) return Sign::positive;
  if (top_j - top_m > kTieTol) return Sign::negative;

  auto top_count = [](const std::vector<double>& p) {
    size_t c = 0;
    while (c < p.size() && p.front() - p[c] <= kTieTol) ++c;
    return c;
  };
  const size_t mult_j = top_count(pj);
  const size_t mult_m = top_count(pm);
  if (mult_j > mult_m) return Sign::negative;
  if (mult_m > mult_j) return Sign::positive;
  return Sign::zero;
}

double tsallis_rate(const DiagonalModel& model, const DensityMatrix& rho,
                    TsallisIndex q) {
  if (!q.is_von_neumann()) {
    return -trace_power_rate(model, rho, q.value()) / (q.value() - 1.0);
  }
  // q -> 1 limit of the closed-form rate. ln P is floored at the zero
  // threshold; states with vanishing populations coupled to occupied levels
  // make this rate arbitrarily large, which the floor merely caps.
  const ProbabilitySpectrum spec = rho.spectrum();
  const std::vector<double>& p = spec.probabilities;
  const Eigen::Index d = rho.size();
  auto safe_log = [](double v) { return std::log(std::max(v, kZeroProb)); };

  double rate = 0.0;
  for (const Channel& ch : model.channels()) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix qmat = spec.basis.adjoint() * ch.op * spec.basis;
    for (Eigen::Index m = 0; m < d; ++m) {
      const double pm = p[static_cast<size_t>(m)];
      if (pm <= kZeroProb) continue;
      for (Eigen::Index n = 0; n < d; ++n) {
        const double w = std::norm(qmat(m, n));
        if (w == 0.0) continue;
        rate += ch.rate * w * pm *
                (safe_log(pm) - safe_log(p[static_cast<size_t>(n)]));
      }
    }
  }
  return rate;
}

}  // namespace qdiss
