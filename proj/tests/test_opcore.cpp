#include "bcldil/opcore.hpp"

#include "bcldil/generate.hpp"
#include "doctest.h"

#include <cmath>

using namespace bcldil;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("psqrt on fixed inputs") {
  Matrix zero = Matrix::Zero(3, 3);
  CHECK(opNorm(psqrt(zero)) == doctest::Approx(0.0).epsilon(1e-14));

  Matrix eye = Matrix::Identity(3, 3);
  CHECK(opNorm(psqrt(eye) - eye) < 1e-14);

  Matrix s = psqrt(diag2(0.64, 0.36));
  CHECK(opNorm(s - diag2(0.8, 0.6)) < 1e-14);
}

TEST_CASE("psqrt squares back on random PSD matrices") {
  for (int trial = 0; trial < 20; ++trial) {
    int dim = 1 + static_cast<int>(trial % 16);
    Matrix g = randomComplexMatrix(dim, dim, 100 + trial);
    Matrix a = g * g.adjoint();
    a /= std::max(1.0, opNorm(a));
    Matrix s = psqrt(a);
    CHECK(opNorm(s * s - a) < 10 * 1e-10);
    CHECK(opNorm(s - s.adjoint()) < 1e-12);
  }
}

TEST_CASE("psqrt rejects bad inputs") {
  Matrix notHerm(2, 2);
  notHerm << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(psqrt(notHerm), Error);

  Matrix negative = diag2(1.0, -0.5);
  try {
    psqrt(negative);
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPSD);
  }
}

TEST_CASE("defect of fixed contractions") {
  SUBCASE("zero operator") {
    DefectData d = defect(Matrix::Zero(3, 3));
    CHECK(d.rank == 3);
    CHECK(opNorm(d.defectOp - Matrix::Identity(3, 3)) < 1e-14);
  }
  SUBCASE("unitary has no defect") {
    Matrix u = randomUnitary(4, 11);
    DefectData d = defect(u);
    CHECK(d.rank == 0);
    CHECK(opNorm(d.defectOp) < 1e-7);
  }
  SUBCASE("scalar 1/2") {
    Matrix t(1, 1);
    t(0, 0) = 0.5;
    DefectData d = defect(t);
    CHECK(d.rank == 1);
    CHECK(std::abs(d.defectOp(0, 0) - std::sqrt(3.0) / 2.0) < 1e-15);
  }
  SUBCASE("non-contraction rejected") {
    Matrix t(1, 1);
    t(0, 0) = 1.5;
    try {
      defect(t);
      FAIL("expected NotContraction");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotContraction);
    }
  }
}

TEST_CASE("defect data invariants on random contractions") {
  for (int trial = 0; trial < 15; ++trial) {
    int dim = 2 + trial % 7;
    Matrix t = randomComplexMatrix(dim, dim, 500 + trial);
    t /= (opNorm(t) * (trial % 2 ? 1.0 : 1.25));  // some with norm 1, some strict
    DefectData d = defect(t);
    CHECK(opNorm(d.defectOp * d.defectOp -
                 (Matrix::Identity(dim, dim) - t * t.adjoint())) < 1e-12);
    CHECK(opNorm(Matrix(d.basis.adjoint() * d.basis) -
                 Matrix::Identity(d.rank, d.rank)) < 1e-13);
    // the basis spans the range: discarded directions carry at most
    // sqrt(rankTol) of the defect operator
    Matrix offRange = (Matrix::Identity(dim, dim) - d.basis * d.basis.adjoint()) * d.defectOp;
    CHECK(opNorm(offRange) < 1e-5);
    CHECK(opNorm(d.basis * d.coordDefect - d.defectOp) < 1e-5);
  }
}

TEST_CASE("defect is bit-deterministic") {
  Matrix t = randomComplexMatrix(5, 5, 77);
  t /= opNorm(t) * 1.1;
  DefectData a = defect(t);
  DefectData b = defect(t);
  CHECK(a.rank == b.rank);
  CHECK((a.basis.array() == b.basis.array()).all());
  CHECK((a.coordDefect.array() == b.coordDefect.array()).all());
}

TEST_CASE("purity and commutation predicates") {
  Matrix zero = Matrix::Zero(2, 2);
  Matrix eye = Matrix::Identity(2, 2);
  CHECK(isPureContraction(zero));
  CHECK(!isPureContraction(eye));

  Matrix t(1, 1);
  t(0, 0) = 0.5;
  CHECK(isCommutingPair(t, t));
  Matrix prod = t * t;
  CHECK(isPureContraction(prod));
  CHECK(spectralRadius(prod) == doctest::Approx(0.25).epsilon(1e-14));

  Matrix a = randomComplexMatrix(3, 3, 1);
  Matrix b = randomComplexMatrix(3, 3, 2);
  a /= 2 * opNorm(a);
  b /= 2 * opNorm(b);
  // generic pair does not commute
  CHECK(!isCommutingPair(a, b));
  CHECK_THROWS_AS(isCommutingPair(a, randomComplexMatrix(4, 4, 3)), Error);
}

TEST_CASE("commuting defect identity") {
  // (I - T1 T1^*) + T1 (I - T2 T2^*) T1^* = T2 (I - T1 T1^*) T2^* + (I - T2 T2^*)
  for (int trial = 0; trial < 10; ++trial) {
    auto [t1, t2] = randomCommutingPair(2 + trial % 7, 900 + trial);
    int n = static_cast<int>(t1.rows());
    Matrix eye = Matrix::Identity(n, n);
    Matrix lhs = (eye - t1 * t1.adjoint()) + t1 * (eye - t2 * t2.adjoint()) * t1.adjoint();
    Matrix rhs = t2 * (eye - t1 * t1.adjoint()) * t2.adjoint() + (eye - t2 * t2.adjoint());
    CHECK(opNorm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("extendToUnitary fixed cases") {
  SUBCASE("identity extension") {
    Matrix eye = Matrix::Identity(3, 3);
    CHECK(opNorm(extendToUnitary(eye, eye) - eye) < 1e-14);
  }
  SUBCASE("rank-one map with canonical complement") {
    Matrix x(2, 1), y(2, 1);
    double s5 = std::sqrt(5.0);
    x << Complex(1 / s5, 0), Complex(2 / s5, 0);
    y << Complex(2 / s5, 0), Complex(1 / s5, 0);
    Matrix w = extendToUnitary(x, y);
    Matrix expected(2, 2);
    expected << Complex(0.8, 0), Complex(0.6, 0), Complex(-0.6, 0), Complex(0.8, 0);
    CHECK(opNorm(w - expected) < 1e-14);
    CHECK(opNorm(w * x - y) < 1e-14);
    CHECK(opNorm(Matrix(w.adjoint() * w) - Matrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("full-rank case is forced") {
    Matrix x = randomUnitary(4, 21);
    Matrix q = randomUnitary(4, 22);
    Matrix w = extendToUnitary(x, q * x);
    CHECK(opNorm(w - q) < 1e-12);
  }
  SUBCASE("gram mismatch rejected") {
    Matrix x = Matrix::Identity(2, 2);
    try {
      extendToUnitary(x, 0.5 * x);
      FAIL("expected GramMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::GramMismatch);
    }
  }
}

TEST_CASE("extendToUnitary properties on random gram-equal inputs") {
  for (int trial = 0; trial < 20; ++trial) {
    int e = 2 + trial % 5;
    int n = 1 + trial % 4;
    Matrix x = randomComplexMatrix(e, n, 3000 + trial);
    x /= std::max(1.0, opNorm(x));
    Matrix q = randomUnitary(e, 4000 + trial);
    Matrix y = q * x;
    Matrix w = extendToUnitary(x, y, 1e-10);
    CHECK(opNorm(Matrix(w.adjoint() * w) - Matrix::Identity(e, e)) < 1e-10);
    CHECK(opNorm(w * x - y) < 10 * 1e-10);
  }
}

TEST_CASE("extendToUnitary is deterministic") {
  Matrix x = randomComplexMatrix(4, 2, 8);
  Matrix y = randomUnitary(4, 9) * x;
  Matrix w1 = extendToUnitary(x, y);
  Matrix w2 = extendToUnitary(x, y);
  CHECK((w1.array() == w2.array()).all());
}

TEST_CASE("cnuCheck") {
  CHECK(cnuCheck(Matrix::Zero(3, 3)));
  CHECK(!cnuCheck(randomUnitary(3, 31)));
  CHECK(!cnuCheck(diag2(1.0, 0.5)));  // unitary part on the first coordinate

  // fixture factors of the scalar pair: both completely non-unitary
  Matrix pu(2, 2);
  pu << Complex(0, 0), Complex(0, 0), Complex(0.6, 0), Complex(0.8, 0);
  CHECK(cnuCheck(pu));
  Matrix up(2, 2);
  up << Complex(0.8, 0), Complex(0, 0), Complex(-0.6, 0), Complex(0, 0);
  CHECK(cnuCheck(up));
}
