#include "qdiss/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdiss/errors.hpp"

namespace qdiss {

EntanglementVerdict detect(const DensityMatrix& rho,
                           const std::vector<int>& condition_on,
                           const std::vector<double>& q_grid) {
  if (q_grid.empty()) {
    throw PreconditionError("detect: q grid is empty");
  }
  EntanglementVerdict v;
  v.condition_on = condition_on;
  std::sort(v.condition_on.begin(), v.condition_on.end());
  for (int f = 0; f < static_cast<int>(rho.dims().size()); ++f) {
    if (!std::binary_search(v.condition_on.begin(), v.condition_on.end(), f)) {
      v.remainder.push_back(f);
    }
  }

  v.min_conditional_value = std::numeric_limits<double>::infinity();
  for (double q : q_grid) {
    const auto res = conditional_q_entropy(rho, condition_on, q);
    if (res.value < v.min_conditional_value) v.min_conditional_value = res.value;
    if (res.value < -kDetectionTol && !v.witness_q.has_value()) {
      v.witness_q = q;
    }
  }
  v.infinity_sign = conditional_sign_at_infinity(rho, condition_on);

  v.detected_by_q_criterion = v.min_conditional_value < -kDetectionTol ||
                              v.infinity_sign == Sign::negative;
  if (v.detected_by_q_criterion && !v.witness_q.has_value()) {
    v.witness_q = std::numeric_limits<double>::infinity();
  }

  if (rho.dims() == std::vector<int>{2, 2}) {
    v.ppt_min_eigenvalue = ppt_min_eigenvalue(rho);
  }
  return v;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<int>{2, 2}) {
    throw PreconditionError("ppt_min_eigenvalue: state must be two qubits");
  }
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix pt(4, 4);
  // Transpose the second factor: (ik),(jl) -> (il),(jk) entry exchange.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          pt(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
        }
      }
    }
  }
  return hermitian_eig(pt).eigenvalues.minCoeff();
}

double threshold_scan(WernerParams family, std::vector<int> condition_on,
                      const std::vector<double>& q_grid, double tol) {
  if (tol <= 0.0) {
    throw PreconditionError("threshold_scan: tol must be positive");
  }
  if (condition_on.empty()) {
    for (int p = 0; p + 1 < family.parties; ++p) condition_on.push_back(p);
  }
  auto detected_at = [&](double x) {
    family.x = x;
    return detect(werner(family), condition_on, q_grid).detected_by_q_criterion;
  };
  if (detected_at(0.0) || !detected_at(1.0)) {
    throw ValidationError(
        "threshold_scan: detection does not separate x = 0 from x = 1");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (detected_at(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::S:
      return "S";
    case Symmetry::AS:
      return "AS";
    case Symmetry::NS:
      return "NS";
  }
  return "NS";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::negative:
      return "negative";
    case Sign::zero:
      return "zero";
    case Sign::positive:
      return "positive";
  }
  return "zero";
}

namespace {

void check_pair(const std::vector<int>& dims, int a, int b) {
  const int n = static_cast<int>(dims.size());
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw PreconditionError("symmetry_label: invalid party pair");
  }
  if (dims[static_cast<size_t>(a)] != dims[static_cast<size_t>(b)]) {
    throw PreconditionError(
        "symmetry_label: swapped parties must have equal dimension");
  }
}

// Permutation matrix exchanging tensor factors a and b.
ComplexMatrix swap_matrix(const std::vector<int>& dims, int a, int b) {
  const int n = static_cast<int>(dims.size());
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  std::vector<Eigen::Index> strides(static_cast<size_t>(n), 1);
  for (int f = n - 2; f >= 0; --f) {
    strides[static_cast<size_t>(f)] =
        strides[static_cast<size_t>(f + 1)] * dims[static_cast<size_t>(f + 1)];
  }
  ComplexMatrix s = ComplexMatrix::Zero(total, total);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rem = idx;
    std::vector<Eigen::Index> digit(static_cast<size_t>(n));
    for (int f = 0; f < n; ++f) {
      digit[static_cast<size_t>(f)] = rem / strides[static_cast<size_t>(f)];
      rem %= strides[static_cast<size_t>(f)];
    }
    std::swap(digit[static_cast<size_t>(a)], digit[static_cast<size_t>(b)]);
    Eigen::Index swapped = 0;
    for (int f = 0; f < n; ++f) {
      swapped += digit[static_cast<size_t>(f)] * strides[static_cast<size_t>(f)];
    }
    s(swapped, idx) = 1.0;
  }
  return s;
}

constexpr double kSymTol = 1e-10;

}  // namespace

Symmetry symmetry_label(const ComplexVector& psi, const std::vector<int>& dims,
                        int party_a, int party_b) {
  check_pair(dims, party_a, party_b);
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (psi.size() != total) {
    throw PreconditionError("symmetry_label: vector size does not match dims");
  }
  const ComplexMatrix s = swap_matrix(dims, party_a, party_b);
  const ComplexVector swapped = s * psi;
  if ((swapped - psi).cwiseAbs().maxCoeff() <= kSymTol) return Symmetry::S;
  if ((swapped + psi).cwiseAbs().maxCoeff() <= kSymTol) return Symmetry::AS;
  return Symmetry::NS;
}

Symmetry symmetry_label(const DensityMatrix& rho, int party_a, int party_b) {
  check_pair(rho.dims(), party_a, party_b);
  const ComplexMatrix s = swap_matrix(rho.dims(), party_a, party_b);
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix id = identity(m.rows());

  const ComplexMatrix anti = 0.5 * (id - s);
  if ((anti * m * anti - m).cwiseAbs().maxCoeff() <= kSymTol) {
    return Symmetry::AS;
  }
  const bool swap_fixed = ((s * m * s).eval() - m).cwiseAbs().maxCoeff() <= kSymTol;
  const ComplexMatrix sym = 0.5 * (id + s);
  if (swap_fixed && (sym * m * sym - m).cwiseAbs().maxCoeff() <= kSymTol) {
    return Symmetry::S;
  }
  return Symmetry::NS;
}

SymmetrySummary full_symmetry(const ComplexVector& psi,
                              const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  std::vector<std::pair<int, int>> s_pairs;
  std::vector<std::pair<int, int>> as_pairs;
  int total_pairs = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (dims[static_cast<size_t>(a)] != dims[static_cast<size_t>(b)]) continue;
      ++total_pairs;
      switch (symmetry_label(psi, dims, a, b)) {
        case Symmetry::S:
          s_pairs.emplace_back(a, b);
          break;
        case Symmetry::AS:
          as_pairs.emplace_back(a, b);
          break;
        case Symmetry::NS:
          break;
      }
    }
  }
  auto parties_of = [](const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> parties;
    for (const auto& [a, b] : pairs) {
      parties.push_back(a);
      parties.push_back(b);
    }
    std::sort(parties.begin(), parties.end());
    parties.erase(std::unique(parties.begin(), parties.end()), parties.end());
    return parties;
  };

  SymmetrySummary out;
  if (total_pairs > 0 && static_cast<int>(s_pairs.size()) == total_pairs) {
    out.label = Symmetry::S;
    out.parties = parties_of(s_pairs);
  } else if (!as_pairs.empty()) {
    out.label = Symmetry::AS;
    out.parties = parties_of(as_pairs);
  } else if (!s_pairs.empty()) {
    out.label = Symmetry::S;
    out.parties = parties_of(s_pairs);
  }
  return out;
}

ClassificationRow classify_three_qubit(const std::string& label) {
  const ThreeQubitState state = three_qubit(label);
  const DensityMatrix rho = state.density();
  const std::vector<int> dims{2, 2, 2};

  ClassificationRow row;
  row.label = label;
  row.full = full_symmetry(state.amplitudes, dims);

  const std::array<std::pair<int, int>, 3> pairs{
      {{0, 1}, {0, 2}, {1, 2}}};
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    MarginalClassification mc;
    mc.pair = pairs[i];
    mc.symmetry = symmetry_label(state.amplitudes, dims, a, b);

    const DensityMatrix marg = rho.marginal({a, b});
    mc.ppt_min_eigenvalue = ppt_min_eigenvalue(marg);
    if (mc.ppt_min_eigenvalue >= -kDetectionTol) {
      mc.robustness = 'F';
    } else {
      mc.robustness =
          std::abs(mc.ppt_min_eigenvalue) >= kRobustnessTau ? 'R' : 'r';
    }

    // Criterion diagnostics on the marginal, conditioning each way.
    const EntanglementVerdict v0 = detect(marg, {0});
    const EntanglementVerdict v1 = detect(marg, {1});
    mc.q_criterion_detected =
        v0.detected_by_q_criterion || v1.detected_by_q_criterion;
    mc.min_conditional_value =
        std::min(v0.min_conditional_value, v1.min_conditional_value);
    row.marginals[i] = mc;
  }
  return row;
}

EntanglementTimeline track(const DiagonalModel& model,
                           const DensityMatrix& rho0,
                           const std::vector<double>& times,
                           const std::vector<int>& condition_on,
                           const std::vector<double>& q_grid,
                           const EvolveOptions& options) {
  const Trajectory traj = evolve(model, rho0, times, options);
  EntanglementTimeline timeline;
  timeline.times = traj.times;
  timeline.verdicts.reserve(traj.states.size());
  for (const DensityMatrix& state : traj.states) {
    timeline.verdicts.push_back(detect(state, condition_on, q_grid));
  }
  for (size_t i = 1; i < timeline.verdicts.size(); ++i) {
    const bool prev = timeline.verdicts[i - 1].detected_by_q_criterion;
    const bool curr = timeline.verdicts[i].detected_by_q_criterion;
    if (prev != curr) {
      timeline.transitions.push_back(
          {timeline.times[i - 1], timeline.times[i], curr});
    }
  }
  return timeline;
}

}  // namespace qdiss
