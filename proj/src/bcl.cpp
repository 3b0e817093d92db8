#include "bcldil/bcl.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bcldil {

void validateTriple(const BCLTriple& triple, double tol) {
  const int e = triple.dimE;
  if (triple.u.rows() != e || triple.u.cols() != e || triple.p.rows() != e ||
      triple.p.cols() != e) {
    fail(Errc::InvalidTriple, "triple matrices must be square of dimension dimE");
  }
  Matrix eye = Matrix::Identity(e, e);
  double unitaryGap = opNorm(triple.u.adjoint() * triple.u - eye);
  double idempotentGap = opNorm(triple.p * triple.p - triple.p);
  double hermGap = opNorm(triple.p - triple.p.adjoint());
  if (unitaryGap > tol || idempotentGap > tol || hermGap > tol) {
    std::ostringstream os;
    os << "unitary gap " << unitaryGap << ", idempotent gap " << idempotentGap
       << ", hermitian gap " << hermGap << " (tol " << tol << ")";
    fail(Errc::InvalidTriple, os.str());
  }
}

std::pair<LinearPencil, LinearPencil> bclPencils(const BCLTriple& triple, double tol) {
  validateTriple(triple, tol);
  Matrix uAdj = triple.u.adjoint();
  Matrix pPerp = Matrix::Identity(triple.dimE, triple.dimE) - triple.p;
  LinearPencil phi{triple.p * uAdj, pPerp * uAdj};
  LinearPencil psi{triple.u * pPerp, triple.u * triple.p};
  return {phi, psi};
}

namespace {

Matrix assembleBlock2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols()) {
    fail(Errc::DimensionMismatch, "block sizes of [[A,B],[C,D]] do not fit together");
  }
  Matrix u(a.rows() + c.rows(), a.cols() + b.cols());
  u.topLeftCorner(a.rows(), a.cols()) = a;
  u.topRightCorner(b.rows(), b.cols()) = b;
  u.bottomLeftCorner(c.rows(), c.cols()) = c;
  u.bottomRightCorner(d.rows(), d.cols()) = d;
  return u;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) fail(Errc::DimensionMismatch, "stack widths differ");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

void requireBlockUnitary(const Matrix& u, double tol) {
  double gap = opNorm(Matrix(u.adjoint() * u) - Matrix::Identity(u.cols(), u.cols()));
  if (gap > tol) {
    std::ostringstream os;
    os << "||U^*U - I|| = " << gap << " exceeds tol " << tol;
    fail(Errc::NotUnitary, os.str());
  }
}

Matrix resolventTimes(const Matrix& d, Complex z, const Matrix& c) {
  // (I - z D)^{-1} C with an explicit invertibility guard
  if (opNorm(z * d) >= 1.0 - 1e-14) {
    fail(Errc::SingularResolvent, "||z D|| too close to 1; resolvent not safely invertible");
  }
  Matrix m = Matrix::Identity(d.rows(), d.cols()) - z * d;
  return m.partialPivLu().solve(c);
}

}  // namespace

Matrix transferFunction(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                        Complex z, double tol) {
  requireBlockUnitary(assembleBlock2x2(a, b, c, d), tol);
  if (c.rows() == 0) return a;  // trivial second space: tau(z) = A
  return a + z * b * resolventTimes(d, z, c);
}

double transferIsometryGap(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                           Complex z) {
  Matrix tau = transferFunction(a, b, c, d, z);
  Matrix lhs = Matrix::Identity(a.cols(), a.cols()) - tau.adjoint() * tau;
  if (c.rows() == 0) return opNorm(lhs);
  Matrix r = resolventTimes(d, z, c);
  Matrix rhs = (1.0 - std::norm(z)) * (r.adjoint() * r);
  return opNorm(lhs - rhs);
}

namespace {

int resolveDegree(const Matrix& t, const BCLOptions& opts) {
  if (opts.degreeOverride) {
    if (*opts.degreeOverride < 0) fail(Errc::UsageError, "degree override must be nonnegative");
    return *opts.degreeOverride;
  }
  return chooseTruncationDegree(t, opts.truncationTol, opts.purityMargin, opts.maxDegree);
}

}  // namespace

ColligationDilationResult dilateViaColligation(const Matrix& t, const Matrix& s, const Matrix& v,
                                       const Matrix& a, const Matrix& b, const Matrix& c,
                                       const BCLOptions& opts) {
  if (!isCommutingPair(s, t, opts.tol)) {
    fail(Errc::NotCommuting, "required commuting pair (S, T)");
  }
  DefectData dT = defect(t, opts.tol, opts.rankTol);
  DefectData dS = defect(s, opts.tol, opts.rankTol);
  if (v.cols() != dT.rank) {
    fail(Errc::DimensionMismatch, "V must act on the defect fiber of T");
  }
  Matrix zeroCorner = Matrix::Zero(dS.rank, dS.rank);
  requireBlockUnitary(assembleBlock2x2(a, b, c, zeroCorner), opts.tol);

  // defining action on the spanning stacks
  Matrix inStack = vstack(v * dT.coordDefect, dS.coordDefect * t.adjoint());
  Matrix outStack = vstack(v * dT.coordDefect * s.adjoint(), dS.coordDefect);
  Matrix u = assembleBlock2x2(a, b, c, zeroCorner);
  double actionGap = opNorm(u * inStack - outStack);
  if (actionGap > std::max(opts.tol, 1e-8)) {
    std::ostringstream os;
    os << "unitary action gap " << actionGap << " on the spanning vectors";
    fail(Errc::ActionMismatch, os.str());
  }

  ColligationDilationResult out;
  out.actionGap = actionGap;
  out.phi = LinearPencil{a.adjoint(), c.adjoint() * b.adjoint()};
  DilationMap pi = buildPi(t, resolveDegree(t, opts), opts.purityMargin, opts.rankTol);
  out.piV = buildPiV(pi, v, opts.tol);
  out.residual = intertwinerResidual(out.piV, out.phi, s);
  return out;
}

BCLDilationBundle constructBCL(const Matrix& t1, const Matrix& t2, const BCLOptions& opts) {
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols()) {
    fail(Errc::NonSquare, "contractions must be square");
  }
  if (t1.rows() != t2.rows()) {
    fail(Errc::DimensionMismatch, "T1 and T2 must act on the same space");
  }
  double comm = opNorm(t1 * t2 - t2 * t1);
  if (comm > opts.tol) {
    std::ostringstream os;
    os << "||T1 T2 - T2 T1|| = " << comm << " exceeds tol " << opts.tol;
    fail(Errc::NotCommuting, os.str());
  }
  if (!isContraction(t1, opts.tol)) fail(Errc::NotContraction, "T1 is not a contraction");
  if (!isContraction(t2, opts.tol)) fail(Errc::NotContraction, "T2 is not a contraction");

  BCLDilationBundle bundle;
  bundle.t1 = t1;
  bundle.t2 = t2;
  bundle.product = t1 * t2;
  if (!isPureContraction(bundle.product, opts.tol, opts.purityMargin)) {
    std::ostringstream os;
    os << "spectral radius of T1 T2 is " << spectralRadius(bundle.product)
       << "; purity requires <= 1 - " << opts.purityMargin;
    fail(Errc::NotPure, os.str());
  }

  bundle.defectT1 = defect(t1, opts.tol, opts.rankTol);
  bundle.defectT2 = defect(t2, opts.tol, opts.rankTol);
  bundle.defectProduct = defect(bundle.product, opts.tol, opts.rankTol);
  const int r1 = bundle.defectT1.rank;
  const int r2 = bundle.defectT2.rank;
  const int r = bundle.defectProduct.rank;
  const int e = r1 + r2;
  const int n = static_cast<int>(t1.rows());

  // stacks defining the isometries: Y collects the joint defect data of the
  // product, X the data seen after letting the other factor act first
  Matrix ystack(e, n);
  ystack.topRows(r1) = bundle.defectT1.coordDefect;
  ystack.bottomRows(r2) = bundle.defectT2.coordDefect * t1.adjoint();
  Matrix xstack(e, n);
  xstack.topRows(r1) = bundle.defectT1.coordDefect * t2.adjoint();
  xstack.bottomRows(r2) = bundle.defectT2.coordDefect;

  // V solves V * coordDefect(T) = Y on the defect range of the product
  const Matrix& cT = bundle.defectProduct.coordDefect;
  Matrix gram = cT * cT.adjoint();
  bundle.v = ystack * cT.adjoint() * gram.ldlt().solve(Matrix::Identity(r, r));
  bundle.residuals.vIsometryGap =
      opNorm(Matrix(bundle.v.adjoint() * bundle.v) - Matrix::Identity(r, r));
  if (bundle.residuals.vIsometryGap > opts.tol) {
    std::ostringstream os;
    os << "||V^*V - I|| = " << bundle.residuals.vIsometryGap
       << "; the defining stacks do not produce an isometry at tol " << opts.tol;
    fail(Errc::IsometrySolveFailed, os.str());
  }

  bundle.residuals.commutatorNorm = comm;
  bundle.residuals.gramGap = opNorm(xstack.adjoint() * xstack - ystack.adjoint() * ystack);
  bundle.triple.dimE = e;
  bundle.triple.u = extendToUnitary(xstack, ystack, opts.tol);
  bundle.residuals.unitaryGapU =
      opNorm(Matrix(bundle.triple.u.adjoint() * bundle.triple.u) - Matrix::Identity(e, e));

  bundle.iota1 = Matrix::Zero(e, r1);
  bundle.iota1.topRows(r1) = Matrix::Identity(r1, r1);
  bundle.iota2 = Matrix::Zero(e, r2);
  bundle.iota2.bottomRows(r2) = Matrix::Identity(r2, r2);
  bundle.triple.p = bundle.iota2 * bundle.iota2.adjoint();

  Matrix pPerp = Matrix::Identity(e, e) - bundle.triple.p;
  bundle.u1 = assembleBlock2x2(bundle.triple.u * bundle.triple.p, bundle.triple.u * bundle.iota1,
                               bundle.iota1.adjoint(), Matrix::Zero(r1, r1));
  bundle.u2 = assembleBlock2x2(pPerp * bundle.triple.u.adjoint(), bundle.iota2,
                               bundle.iota2.adjoint() * bundle.triple.u.adjoint(),
                               Matrix::Zero(r2, r2));

  std::tie(bundle.phi, bundle.psi) = bclPencils(bundle.triple, std::max(opts.tol, 1e-8));

  const int degree = resolveDegree(bundle.product, opts);
  bundle.pi = buildPi(bundle.product, degree, opts.purityMargin, opts.rankTol);
  bundle.piV = buildPiV(bundle.pi, bundle.v, opts.tol);

  BCLResidualReport& res = bundle.residuals;
  res.degree = degree;
  res.tailBound = bundle.pi.tailBound;
  res.intertwineT1 = intertwinerResidual(bundle.piV, bundle.phi, t1);
  res.intertwineT2 = intertwinerResidual(bundle.piV, bundle.psi, t2);
  res.intertwineProduct = intertwinerResidual(bundle.piV, shiftPencil(e), bundle.product);
  res.isometryDefectPiV = isometryDefect(bundle.piV);

  Matrix eye = Matrix::Identity(e, e);
  for (int j = 0; j < opts.productSamples; ++j) {
    double theta = 2.0 * std::numbers::pi * j / opts.productSamples;
    Complex z(std::cos(theta), std::sin(theta));
    Matrix phiZ = evalPencil(bundle.phi, z);
    Matrix psiZ = evalPencil(bundle.psi, z);
    res.pencilProductGap = std::max(res.pencilProductGap, opNorm(phiZ * psiZ - z * eye));
    res.pencilProductGap = std::max(res.pencilProductGap, opNorm(psiZ * phiZ - z * eye));
  }
  res.innerGapPhi = innerCheck(bundle.phi, opts.innerSamples).maxResidual;
  res.innerGapPsi = innerCheck(bundle.psi, opts.innerSamples).maxResidual;
  return bundle;
}

}  // namespace bcldil
