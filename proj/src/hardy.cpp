#include "bcldil/hardy.hpp"

#include "bcldil/opcore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bcldil {

namespace {

void requirePencil(const LinearPencil& p) {
  if (p.c0.rows() != p.c0.cols() || p.c1.rows() != p.c1.cols() ||
      p.c0.rows() != p.c1.rows()) {
    fail(Errc::DimensionMismatch, "pencil coefficients must be square and equally sized");
  }
}

void requireFiber(const LinearPencil& p, const HardyVector& f) {
  requirePencil(p);
  if (p.fiberDim() != f.fiberDim) {
    std::ostringstream os;
    os << "pencil fiber " << p.fiberDim() << " vs vector fiber " << f.fiberDim;
    fail(Errc::FiberMismatch, os.str());
  }
  if (f.coeffs.size() != static_cast<Eigen::Index>(f.fiberDim) * (f.degree + 1)) {
    fail(Errc::DimensionMismatch, "coefficient storage inconsistent with degree");
  }
}

}  // namespace

LinearPencil shiftPencil(int fiberDim) {
  return {Matrix::Zero(fiberDim, fiberDim), Matrix::Identity(fiberDim, fiberDim)};
}

LinearPencil identityPencil(int fiberDim) {
  return {Matrix::Identity(fiberDim, fiberDim), Matrix::Zero(fiberDim, fiberDim)};
}

Matrix evalPencil(const LinearPencil& p, Complex z) {
  requirePencil(p);
  return p.c0 + z * p.c1;
}

HardyVector HardyVector::zero(int fiberDim, int degree) {
  HardyVector out;
  out.fiberDim = fiberDim;
  out.degree = degree;
  out.coeffs = Vector::Zero(static_cast<Eigen::Index>(fiberDim) * (degree + 1));
  return out;
}

Eigen::VectorBlock<Vector> HardyVector::coefficient(int k) {
  return coeffs.segment(static_cast<Eigen::Index>(k) * fiberDim, fiberDim);
}

Eigen::VectorBlock<const Vector> HardyVector::coefficient(int k) const {
  return coeffs.segment(static_cast<Eigen::Index>(k) * fiberDim, fiberDim);
}

PencilApplyResult pencilApply(const LinearPencil& p, const HardyVector& f) {
  requireFiber(p, f);
  PencilApplyResult out;
  out.value = HardyVector::zero(f.fiberDim, f.degree);
  for (int k = 0; k <= f.degree; ++k) {
    Vector acc = p.c0 * f.coefficient(k);
    if (k > 0) acc += p.c1 * f.coefficient(k - 1);
    out.value.coefficient(k) = acc;
  }
  out.leakage = (p.c1 * f.coefficient(f.degree)).norm();
  return out;
}

HardyVector pencilAdjointApply(const LinearPencil& p, const HardyVector& f) {
  requireFiber(p, f);
  HardyVector out = HardyVector::zero(f.fiberDim, f.degree);
  for (int k = 0; k <= f.degree; ++k) {
    Vector acc = p.c0.adjoint() * f.coefficient(k);
    if (k < f.degree) acc += p.c1.adjoint() * f.coefficient(k + 1);
    out.coefficient(k) = acc;
  }
  return out;
}

Matrix denseSymbolMatrix(const std::vector<Matrix>& coeffs, int degree) {
  if (coeffs.empty()) fail(Errc::DimensionMismatch, "symbol needs at least one coefficient");
  const int f = static_cast<int>(coeffs.front().rows());
  for (const Matrix& c : coeffs) {
    if (c.rows() != f || c.cols() != f) {
      fail(Errc::DimensionMismatch, "symbol coefficients must share the fiber dimension");
    }
  }
  const Eigen::Index size = static_cast<Eigen::Index>(f) * (degree + 1);
  Matrix out = Matrix::Zero(size, size);
  for (int k = 0; k <= degree; ++k) {
    for (int d = 0; d < static_cast<int>(coeffs.size()); ++d) {
      int j = k - d;
      if (j < 0) break;
      out.block(static_cast<Eigen::Index>(k) * f, static_cast<Eigen::Index>(j) * f, f, f) =
          coeffs[d];
    }
  }
  return out;
}

namespace {

int checkedEmbedding(const Matrix& gamma, int fiberDim, double tol) {
  if (fiberDim <= 0 || gamma.rows() % fiberDim != 0) {
    fail(Errc::FiberMismatch, "embedding rows are not a multiple of the fiber dimension");
  }
  double gap = opNorm(Matrix(gamma.adjoint() * gamma) -
                      Matrix::Identity(gamma.cols(), gamma.cols()));
  if (gap > tol) {
    std::ostringstream os;
    os << "||Gamma^*Gamma - I|| = " << gap << " exceeds tol " << tol;
    fail(Errc::NotIsometry, os.str());
  }
  return static_cast<int>(gamma.rows()) / fiberDim - 1;  // degree
}

}  // namespace

Matrix compress(const Matrix& gamma, int fiberDim, const LinearPencil& p, double tol) {
  requirePencil(p);
  if (p.fiberDim() != fiberDim) fail(Errc::FiberMismatch, "pencil fiber mismatch");
  const int degree = checkedEmbedding(gamma, fiberDim, tol);
  const int n = static_cast<int>(gamma.cols());
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k <= degree; ++k) {
    Matrix row = p.c0 * gamma.middleRows(static_cast<Eigen::Index>(k) * fiberDim, fiberDim);
    if (k > 0) {
      row += p.c1 * gamma.middleRows(static_cast<Eigen::Index>(k - 1) * fiberDim, fiberDim);
    }
    out += gamma.middleRows(static_cast<Eigen::Index>(k) * fiberDim, fiberDim).adjoint() * row;
  }
  return out;
}

Matrix compressSymbol(const Matrix& gamma, int fiberDim, const std::vector<Matrix>& coeffs,
                      double tol) {
  const int degree = checkedEmbedding(gamma, fiberDim, tol);
  Matrix dense = denseSymbolMatrix(coeffs, degree);
  return gamma.adjoint() * (dense * gamma);
}

HardyOperator HardyOperator::shift(int fiberDim) {
  HardyOperator op;
  op.kind_ = Kind::Shift;
  op.fiberDim_ = fiberDim;
  op.pencil_ = shiftPencil(fiberDim);
  return op;
}

HardyOperator HardyOperator::pencil(LinearPencil p) {
  requirePencil(p);
  HardyOperator op;
  op.kind_ = Kind::Pencil;
  op.fiberDim_ = p.fiberDim();
  op.pencil_ = std::move(p);
  return op;
}

HardyOperator HardyOperator::dense(const std::vector<Matrix>& coeffs, int degree) {
  HardyOperator op;
  op.kind_ = Kind::Dense;
  op.fiberDim_ = coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows());
  op.dense_ = denseSymbolMatrix(coeffs, degree);
  op.denseDegree_ = degree;
  return op;
}

PencilApplyResult HardyOperator::apply(const HardyVector& f) const {
  if (kind_ != Kind::Dense) return pencilApply(pencil_, f);
  if (f.fiberDim != fiberDim_ || f.degree != denseDegree_) {
    fail(Errc::FiberMismatch, "dense operator built for a different truncated space");
  }
  PencilApplyResult out;
  out.value = f;
  out.value.coeffs = dense_ * f.coeffs;
  out.leakage = 0.0;  // the dense truncation has no separate spillover
  return out;
}

HardyVector HardyOperator::adjointApply(const HardyVector& f) const {
  if (kind_ != Kind::Dense) return pencilAdjointApply(pencil_, f);
  if (f.fiberDim != fiberDim_ || f.degree != denseDegree_) {
    fail(Errc::FiberMismatch, "dense operator built for a different truncated space");
  }
  HardyVector out = f;
  out.coeffs = dense_.adjoint() * f.coeffs;
  return out;
}

Matrix HardyOperator::toDense(int degree) const {
  if (kind_ == Kind::Dense) {
    if (degree != denseDegree_) {
      fail(Errc::DimensionMismatch, "dense operator built for a different degree");
    }
    return dense_;
  }
  return denseSymbolMatrix({pencil_.c0, pencil_.c1}, degree);
}

InnerCheckReport innerCheck(const LinearPencil& p, int nSamples, double tol) {
  requirePencil(p);
  InnerCheckReport report;
  report.samples = nSamples;
  report.tol = tol;
  const Matrix eye = Matrix::Identity(p.fiberDim(), p.fiberDim());
  for (int j = 0; j < nSamples; ++j) {
    double theta = 2.0 * std::numbers::pi * j / nSamples;
    Matrix pz = evalPencil(p, Complex(std::cos(theta), std::sin(theta)));
    report.maxResidual = std::max(report.maxResidual, opNorm(pz.adjoint() * pz - eye));
  }
  report.inner = report.maxResidual <= tol;
  return report;
}

}  // namespace bcldil
