#include "bcldil/factor.hpp"

#include "bcldil/generate.hpp"
#include "doctest.h"

#include <cmath>

using namespace bcldil;

namespace {

Matrix scalarMat(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("pullBack of the fixture bundle") {
  BCLOptions opts;
  opts.degreeOverride = 40;
  BCLDilationBundle bundle = constructBCL(scalarMat(0.5), scalarMat(0.5), opts);
  FactorizationResult fr = pullBack(bundle);

  CHECK(std::abs(fr.phiSmall.c0(0, 0) - Complex(0.4, 0)) < 1e-10);
  CHECK(std::abs(fr.phiSmall.c1(0, 0) - Complex(0.4, 0)) < 1e-10);
  CHECK(std::abs(fr.psiSmall.c0(0, 0) - Complex(0.4, 0)) < 1e-10);
  CHECK(std::abs(fr.psiSmall.c1(0, 0) - Complex(0.4, 0)) < 1e-10);

  CHECK(fr.residuals.compressionT1 <= 1e-10);
  CHECK(fr.residuals.compressionT2 <= 1e-10);
  CHECK(fr.residuals.compressionProduct <= 1e-10);
  CHECK(fr.residuals.jointInvariance <= 1e-10);
  CHECK(fr.residuals.intertwinePhi <= 1e-10);
  CHECK(fr.residuals.intertwinePsi <= 1e-10);

  // the constant coefficient is the compression of P U^* by V
  Matrix direct = fr.v.adjoint() * bundle.triple.p * bundle.triple.u.adjoint() * fr.v;
  CHECK(opNorm(fr.phiSmall.c0 - direct) < 1e-14);

  CompressionReport report = verifyFactorization(bundle.t1, bundle.t2, fr, bundle.pi);
  CHECK(report.compressionT1 <= 1e-10);
  CHECK(std::abs(compress(bundle.pi.stacked(), 1, fr.phiSmall)(0, 0) - Complex(0.5, 0)) <
        1e-10);
  CHECK(report.compressionProductPhiPsi <= 1e-10);
  CHECK(report.compressionProductPsiPhi <= 1e-10);
  // scalar fiber: the two product orders coincide
  CHECK(report.noncommutativityGap == 0.0);
}

TEST_CASE("pullBack identity case") {
  // T1 = T, T2 = I: the second factor has no defect, so E collapses onto the
  // first defect fiber with U = I, P = 0, V = I; phi is the shift pencil and
  // psi the identity pencil
  Matrix t = scalarMat(0.25);
  BCLOptions opts;
  opts.degreeOverride = 30;
  BCLDilationBundle bundle = constructBCL(t, Matrix::Identity(1, 1), opts);
  CHECK(bundle.triple.dimE == 1);
  CHECK(opNorm(bundle.triple.u - Matrix::Identity(1, 1)) < 1e-12);
  CHECK(opNorm(bundle.triple.p) == 0.0);
  CHECK(opNorm(bundle.v - Matrix::Identity(1, 1)) < 1e-12);

  FactorizationResult fr = pullBack(bundle);
  CHECK(opNorm(fr.phiSmall.c0) < 1e-12);
  CHECK(opNorm(fr.phiSmall.c1 - Matrix::Identity(1, 1)) < 1e-12);
  CHECK(opNorm(fr.psiSmall.c0 - Matrix::Identity(1, 1)) < 1e-12);
  CHECK(opNorm(fr.psiSmall.c1) < 1e-12);

  Matrix gamma = bundle.pi.stacked();
  CHECK(opNorm(compress(gamma, bundle.pi.fiberDim, fr.phiSmall) - t) <= 1e-10);
  CHECK(opNorm(compress(gamma, bundle.pi.fiberDim, fr.psiSmall) - Matrix::Identity(1, 1)) <=
        1e-10);
}

TEST_CASE("pull-back uniqueness anchor: lifting the small dilation gives the bundle lift") {
  for (int trial = 0; trial < 6; ++trial) {
    auto [t1, t2] = randomCommutingPair(2 + trial % 5, 7000 + trial);
    BCLDilationBundle bundle = constructBCL(t1, t2);
    DilationMap relifted = buildPiV(bundle.pi, bundle.v);
    REQUIRE(relifted.blocks.size() == bundle.piV.blocks.size());
    for (size_t k = 0; k < relifted.blocks.size(); ++k) {
      CHECK((relifted.blocks[k].array() == bundle.piV.blocks[k].array()).all());
    }
  }
}

TEST_CASE("factor compression residuals on random pairs") {
  bool sawNontrivialGap = false;
  for (int trial = 0; trial < 8; ++trial) {
    auto [t1, t2] = randomCommutingPair(2 + trial % 6, 7600 + trial);
    BCLDilationBundle bundle = constructBCL(t1, t2);
    FactorizationResult fr = pullBack(bundle);
    CompressionReport report = verifyFactorization(t1, t2, fr, bundle.pi);
    CHECK(report.compressionT1 <= 1e-8);
    CHECK(report.compressionT2 <= 1e-8);
    CHECK(report.compressionProductPhiPsi <= 1e-8);
    CHECK(report.compressionProductPsiPhi <= 1e-8);
    CHECK(report.jointInvariancePhi <= 1e-8);
    CHECK(report.jointInvariancePsi <= 1e-8);
    if (bundle.pi.fiberDim >= 2 && report.noncommutativityGap > 1e-6) sawNontrivialGap = true;
  }
  CHECK(sawNontrivialGap);
}

TEST_CASE("jointInvarianceCheck special cases") {
  Matrix t = scalarMat(0.25);
  DilationMap pi = buildPi(t, 20);
  CHECK(jointInvarianceCheck(pi, shiftPencil(1)) <= pi.tailBound + 1e-12);

  // a full-space embedding is invariant under everything
  DilationMap full;
  full.sourceDim = 6;
  full.fiberDim = 2;
  full.degree = 2;
  full.blocks = {Matrix::Identity(2, 6).eval(), Matrix::Zero(2, 6).eval(),
                 Matrix::Zero(2, 6).eval()};
  full.blocks[0] = Matrix::Zero(2, 6);
  full.blocks[0](0, 0) = 1;
  full.blocks[0](1, 1) = 1;
  full.blocks[1](0, 2) = 1;
  full.blocks[1](1, 3) = 1;
  full.blocks[2](0, 4) = 1;
  full.blocks[2](1, 5) = 1;
  LinearPencil p{randomComplexMatrix(2, 2, 91), randomComplexMatrix(2, 2, 92)};
  CHECK(jointInvarianceCheck(full, p) < 1e-13);
}

TEST_CASE("productSymbol matches pencil evaluation") {
  LinearPencil a{randomComplexMatrix(3, 3, 95), randomComplexMatrix(3, 3, 96)};
  LinearPencil b{randomComplexMatrix(3, 3, 97), randomComplexMatrix(3, 3, 98)};
  auto coeffs = productSymbol(a, b);
  Complex z(0.3, -0.6);
  Matrix direct = evalPencil(a, z) * evalPencil(b, z);
  Matrix viaCoeffs = coeffs[0] + z * coeffs[1] + z * z * coeffs[2];
  CHECK(opNorm(direct - viaCoeffs) < 1e-13);
}
