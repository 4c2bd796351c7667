#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "qdiss/errors.hpp"
#include "qdiss/linalg.hpp"
#include "qdiss/states.hpp"

using namespace qdiss;
using namespace qdiss::testing;

namespace {

const Complex kI{0.0, 1.0};

}  // namespace

TEST_CASE("pauli single-site matrices") {
  const ComplexMatrix x = pauli('x', 0, 1);
  const ComplexMatrix y = pauli('y', 0, 1);
  const ComplexMatrix z = pauli('z', 0, 1);

  CHECK(z(0, 0) == Complex(1.0));
  CHECK(z(1, 1) == Complex(-1.0));
  CHECK(x(0, 1) == Complex(1.0));
  CHECK(x(1, 0) == Complex(1.0));
  CHECK(y(0, 1) == -kI);
  CHECK(y(1, 0) == kI);

  CHECK((pauli('+', 0, 1) - 0.5 * (x + kI * y)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pauli('-', 0, 1) - 0.5 * (x - kI * y)).cwiseAbs().maxCoeff() == 0.0);

  // raising maps the low basis state onto the high one
  CHECK(pauli('+', 0, 1)(0, 1) == Complex(1.0));
  CHECK(pauli('-', 0, 1)(1, 0) == Complex(1.0));
}

TEST_CASE("pauli embeds at the requested site") {
  const ComplexMatrix x = pauli('x', 0, 1);
  const ComplexMatrix z = pauli('z', 0, 1);
  const ComplexMatrix id = identity(2);

  CHECK((pauli('x', 0, 2) - kron(x, id)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pauli('z', 1, 2) - kron(id, z)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pauli('x', 1, 3) - kron(kron(id, x), id)).cwiseAbs().maxCoeff() ==
        0.0);

  CHECK_THROWS_AS(pauli('q', 0, 1), PreconditionError);
  CHECK_THROWS_AS(pauli('x', -1, 2), PreconditionError);
  CHECK_THROWS_AS(pauli('x', 2, 2), PreconditionError);
  CHECK_THROWS_AS(pauli('x', 0, 0), PreconditionError);
}

TEST_CASE("werner family endpoints and spectrum") {
  const DensityMatrix mixed = werner({0.0, 2, 2});
  CHECK((mixed.matrix() - 0.25 * identity(4)).cwiseAbs().maxCoeff() <= 1e-15);

  const DensityMatrix entangled = werner({1.0, 2, 2});
  const DensityMatrix bell = bell_state();
  CHECK((entangled.matrix() - bell.matrix()).cwiseAbs().maxCoeff() <= 1e-15);

  for (double x : {0.1, 0.4, 0.9}) {
    const auto spec = werner({x, 2, 2}).spectrum();
    CHECK(spec.probabilities[0] ==
          doctest::Approx((1.0 + 3.0 * x) / 4.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) {
      CHECK(spec.probabilities[k] ==
            doctest::Approx((1.0 - x) / 4.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("werner states validate and reduce to maximally mixed parties") {
  for (double x : {0.0, 0.3, 0.7, 1.0}) {
    for (auto [levels, parties] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const DensityMatrix w = werner({x, levels, parties});
      CHECK(validate_density(w.matrix()).pass());
      for (int party = 0; party < parties; ++party) {
        const DensityMatrix marg = w.marginal({party});
        CHECK((marg.matrix() - identity(levels) / levels)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
      }
    }
  }

  CHECK_THROWS_AS(werner({-0.1, 2, 2}), PreconditionError);
  CHECK_THROWS_AS(werner({1.1, 2, 2}), PreconditionError);
  CHECK_THROWS_AS(werner({0.5, 1, 2}), PreconditionError);
  CHECK_THROWS_AS(werner({0.5, 2, 1}), PreconditionError);
}

TEST_CASE("werner_threshold closed forms") {
  CHECK(werner_threshold(2, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(werner_threshold(2, 3) == doctest::Approx(1.0 / 5.0));
  CHECK(werner_threshold(3, 2) == doctest::Approx(1.0 / 4.0));
  CHECK(werner_threshold(2, 4) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("three-qubit catalog amplitudes") {
  const auto q1 = three_qubit("Q1+");
  CHECK(q1.label == "Q1+");
  CHECK(q1.amplitudes(0) == Complex(1.0));
  CHECK(q1.amplitudes.tail(7).cwiseAbs().maxCoeff() == 0.0);

  const auto d2 = three_qubit("D2+");
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(d2.amplitudes(1).real() == doctest::Approx(s));
  CHECK(d2.amplitudes(2).real() == doctest::Approx(-s));
  CHECK(std::abs(d2.amplitudes(0)) == 0.0);

  const auto ghz = three_qubit("GHZ+");
  CHECK(ghz.amplitudes(0).real() == doctest::Approx(s));
  CHECK(ghz.amplitudes(7).real() == doctest::Approx(s));

  // the classification-row labels index the same vectors as the construction names
  for (auto [alias, base] : {std::pair{"GFF+", "GHZ+"},
                             {"WRR+", "Q2+"},
                             {"GFR-", "D2-"},
                             {"WRr-", "D1-"}}) {
    const auto a = three_qubit(alias);
    const auto b = three_qubit(base);
    CHECK(a.label == alias);
    CHECK((a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff() == 0.0);
  }

  CHECK_THROWS_AS(three_qubit("nope"), PreconditionError);
}

TEST_CASE("catalog states are orthonormal and valid densities") {
  const auto labels = three_qubit_labels();
  CHECK(labels == std::vector<std::string>{"GHZ+", "GHZ-", "GFR+", "GFR-",
                                           "WRr+", "WRr-", "WRR+", "WRR-"});
  for (size_t i = 0; i < labels.size(); ++i) {
    const auto vi = three_qubit(labels[i]).amplitudes;
    for (size_t j = 0; j < labels.size(); ++j) {
      const auto vj = three_qubit(labels[j]).amplitudes;
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(vi.dot(vj)) == doctest::Approx(expected).epsilon(1e-14));
    }
    const DensityMatrix rho = three_qubit(labels[i]).density();
    CHECK(validate_density(rho.matrix()).pass());
    CHECK(rho.purity() == doctest::Approx(1.0));
  }
}

TEST_CASE("three-spin exchange Hamiltonian spectrum") {
  const ComplexMatrix h = heisenberg_3spin();
  CHECK(hermiticity_deviation(h) <= 1e-14);

  const HermitianEigenSystem sys = hermitian_eig(h);
  const std::vector<double> expected{2.5, 2.5, 2.5, 2.5, -1.5, -1.5, -3.5,
                                     -3.5};
  for (int k = 0; k < 8; ++k) {
    CHECK(sys.eigenvalues(k) == doctest::Approx(expected[k]).epsilon(1e-10));
  }

  for (auto [label, energy] : {std::pair{"GHZ+", 2.5},
                               {"GHZ-", 2.5},
                               {"WRR+", 2.5},
                               {"WRR-", 2.5},
                               {"GFR+", -1.5},
                               {"GFR-", -1.5},
                               {"WRr+", -3.5},
                               {"WRr-", -3.5}}) {
    const ComplexVector psi = three_qubit(label).amplitudes;
    CHECK((h * psi - energy * psi).norm() <= 1e-10);
  }
}
