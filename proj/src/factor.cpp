#include "bcldil/factor.hpp"

#include <algorithm>

namespace bcldil {

std::array<Matrix, 3> productSymbol(const LinearPencil& a, const LinearPencil& b) {
  if (a.fiberDim() != b.fiberDim()) {
    fail(Errc::FiberMismatch, "product symbols need a common fiber");
  }
  return {Matrix(a.c0 * b.c0), Matrix(a.c0 * b.c1 + a.c1 * b.c0), Matrix(a.c1 * b.c1)};
}

double jointInvarianceCheck(const DilationMap& pi, const LinearPencil& p) {
  if (p.fiberDim() != pi.fiberDim) {
    fail(Errc::FiberMismatch, "pencil fiber must match the dilation fiber");
  }
  if (pi.degree == 0) return 0.0;
  Matrix gamma = pi.stacked();
  Matrix w(gamma.rows(), gamma.cols());
  const int f = pi.fiberDim;
  for (int k = 0; k <= pi.degree; ++k) {
    Matrix row = p.c0.adjoint() * pi.blocks[k];
    if (k < pi.degree) row += p.c1.adjoint() * pi.blocks[k + 1];
    w.middleRows(static_cast<Eigen::Index>(k) * f, f) = row;
  }
  Matrix residual = w - gamma * (gamma.adjoint() * w);
  return opNorm(residual.topRows(static_cast<Eigen::Index>(pi.degree) * f));
}

namespace {

LinearPencil compressPencilByIsometry(const Matrix& v, const LinearPencil& big) {
  return LinearPencil{v.adjoint() * big.c0 * v, v.adjoint() * big.c1 * v};
}

}  // namespace

FactorizationResult pullBack(const BCLDilationBundle& bundle) {
  FactorizationResult out;
  out.v = bundle.v;
  out.phiSmall = compressPencilByIsometry(bundle.v, bundle.phi);
  out.psiSmall = compressPencilByIsometry(bundle.v, bundle.psi);

  const DilationMap& pi = bundle.pi;
  out.residuals.intertwinePhi = intertwinerResidual(pi, out.phiSmall, bundle.t1);
  out.residuals.intertwinePsi = intertwinerResidual(pi, out.psiSmall, bundle.t2);

  Matrix gamma = pi.stacked();
  const int r = pi.fiberDim;
  out.residuals.compressionT1 = opNorm(compress(gamma, r, out.phiSmall) - bundle.t1);
  out.residuals.compressionT2 = opNorm(compress(gamma, r, out.psiSmall) - bundle.t2);

  auto phiPsi = productSymbol(out.phiSmall, out.psiSmall);
  auto psiPhi = productSymbol(out.psiSmall, out.phiSmall);
  std::vector<Matrix> phiPsiCoeffs(phiPsi.begin(), phiPsi.end());
  std::vector<Matrix> psiPhiCoeffs(psiPhi.begin(), psiPhi.end());
  out.residuals.compressionProduct =
      std::max(opNorm(compressSymbol(gamma, r, phiPsiCoeffs) - bundle.product),
               opNorm(compressSymbol(gamma, r, psiPhiCoeffs) - bundle.product));
  out.residuals.jointInvariance = std::max(jointInvarianceCheck(pi, out.phiSmall),
                                           jointInvarianceCheck(pi, out.psiSmall));
  return out;
}

CompressionReport verifyFactorization(const Matrix& t1, const Matrix& t2,
                                const FactorizationResult& result, const DilationMap& pi) {
  CompressionReport report;
  Matrix gamma = pi.stacked();
  const int r = pi.fiberDim;
  Matrix product = t1 * t2;

  report.compressionT1 = opNorm(compress(gamma, r, result.phiSmall) - t1);
  report.compressionT2 = opNorm(compress(gamma, r, result.psiSmall) - t2);

  auto phiPsi = productSymbol(result.phiSmall, result.psiSmall);
  auto psiPhi = productSymbol(result.psiSmall, result.phiSmall);
  std::vector<Matrix> phiPsiCoeffs(phiPsi.begin(), phiPsi.end());
  std::vector<Matrix> psiPhiCoeffs(psiPhi.begin(), psiPhi.end());
  report.compressionProductPhiPsi = opNorm(compressSymbol(gamma, r, phiPsiCoeffs) - product);
  report.compressionProductPsiPhi = opNorm(compressSymbol(gamma, r, psiPhiCoeffs) - product);

  report.jointInvariancePhi = jointInvarianceCheck(pi, result.phiSmall);
  report.jointInvariancePsi = jointInvarianceCheck(pi, result.psiSmall);
  for (int k = 0; k < 3; ++k) {
    report.noncommutativityGap =
        std::max(report.noncommutativityGap, opNorm(phiPsi[k] - psiPhi[k]));
  }
  return report;
}

}  // namespace bcldil
