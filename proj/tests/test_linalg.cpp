#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qdiss/errors.hpp"
#include "qdiss/linalg.hpp"

using namespace qdiss;

TEST_CASE("hermiticity deviation") {
  std::mt19937 gen(11);
  CHECK(hermiticity_deviation(testing::random_hermitian(gen, 5)) == 0.0);

  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK(hermiticity_deviation(m) == doctest::Approx(1.0));

  ComplexMatrix rect(2, 3);
  CHECK_THROWS_AS(hermiticity_deviation(rect), PreconditionError);
}

TEST_CASE("kron layout and mixed-product identity") {
  ComplexMatrix a(2, 2);
  a << 1, 2, 3, 4;
  ComplexMatrix b(2, 2);
  b << 0, 5, 6, 7;
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  // block (i,j) equals a(i,j) * b
  CHECK(k(0, 1) == Complex(5));
  CHECK(k(1, 0) == Complex(6));
  CHECK(k(0, 3) == Complex(10));
  CHECK(k(3, 2) == Complex(4.0 * 6.0));

  std::mt19937 gen(12);
  const ComplexMatrix c = testing::random_matrix(gen, 2);
  const ComplexMatrix d = testing::random_matrix(gen, 3);
  const ComplexMatrix e = testing::random_matrix(gen, 2);
  const ComplexMatrix f = testing::random_matrix(gen, 3);
  const ComplexMatrix lhs = kron(c, d) * kron(e, f);
  const ComplexMatrix rhs = kron((c * e).eval(), (d * f).eval());
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  ComplexMatrix rect(2, 3);
  CHECK_THROWS_AS(kron(rect, a), PreconditionError);
}

TEST_CASE("hermitian_eig reconstructs and sorts non-increasing") {
  std::mt19937 gen(13);
  const ComplexMatrix m = testing::random_hermitian(gen, 6);
  const HermitianEigenSystem sys = hermitian_eig(m);

  for (Eigen::Index i = 1; i < sys.eigenvalues.size(); ++i) {
    CHECK(sys.eigenvalues(i) <= sys.eigenvalues(i - 1));
  }
  const ComplexMatrix rebuilt = sys.eigenvectors *
                                sys.eigenvalues.cast<Complex>().asDiagonal() *
                                sys.eigenvectors.adjoint();
  CHECK((rebuilt - m).cwiseAbs().maxCoeff() < 1e-10);
  const ComplexMatrix gram =
      sys.eigenvectors.adjoint() * sys.eigenvectors;
  CHECK((gram - identity(6)).cwiseAbs().maxCoeff() < 1e-12);

  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(bad), PreconditionError);
}

TEST_CASE("partial_trace on product and composite inputs") {
  std::mt19937 gen(14);
  const ComplexMatrix a = testing::random_matrix(gen, 2);
  const ComplexMatrix b = testing::random_matrix(gen, 3);
  const ComplexMatrix ab = kron(a, b);

  const ComplexMatrix keep_left = partial_trace(ab, {2, 3}, {0});
  CHECK((keep_left - b.trace() * a).cwiseAbs().maxCoeff() < 1e-12);

  const ComplexMatrix keep_right = partial_trace(ab, {2, 3}, {1});
  CHECK((keep_right - a.trace() * b).cwiseAbs().maxCoeff() < 1e-12);

  // keeping everything is the identity map
  const ComplexMatrix keep_all = partial_trace(ab, {2, 3}, {0, 1});
  CHECK((keep_all - ab).cwiseAbs().maxCoeff() == 0.0);

  // middle factor of a three-fold product
  const ComplexMatrix c = testing::random_matrix(gen, 2);
  const ComplexMatrix abc = kron(a, kron(b, c));
  const ComplexMatrix mid = partial_trace(abc, {2, 3, 2}, {1});
  CHECK((mid - a.trace() * c.trace() * b).cwiseAbs().maxCoeff() < 1e-12);

  // trace is preserved for any keep set
  const ComplexMatrix any = testing::random_matrix(gen, 12);
  const ComplexMatrix part = partial_trace(any, {2, 3, 2}, {2});
  CHECK(std::abs(part.trace() - any.trace()) < 1e-12);

  CHECK_THROWS_AS(partial_trace(ab, {2, 3}, {}), PreconditionError);
  CHECK_THROWS_AS(partial_trace(ab, {2, 3}, {2}), PreconditionError);
  CHECK_THROWS_AS(partial_trace(ab, {2, 2}, {0}), PreconditionError);
  CHECK_THROWS_AS(partial_trace(ab, {2, 3}, {0, 0}), PreconditionError);
}
