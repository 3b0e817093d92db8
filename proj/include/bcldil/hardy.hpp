#pragma once

#include "bcldil/types.hpp"

#include <vector>

namespace bcldil {

// Degree-one matrix polynomial c0 + z c1 over a fiber space. This is the
// universal symbol type: the coefficient shift, both multipliers of a
// product factorization, and their compressions are all instances.
struct LinearPencil {
  Matrix c0;
  Matrix c1;

  int fiberDim() const { return static_cast<int>(c0.rows()); }
};

LinearPencil shiftPencil(int fiberDim);
LinearPencil identityPencil(int fiberDim);

Matrix evalPencil(const LinearPencil& p, Complex z);

// Truncated fiber-valued power series: coefficient k lives at
// coeffs.segment(k * fiberDim, fiberDim), and the squared norm is the sum of
// squared coefficient norms.
struct HardyVector {
  int fiberDim = 0;
  int degree = 0;
  Vector coeffs;

  static HardyVector zero(int fiberDim, int degree);
  Eigen::VectorBlock<Vector> coefficient(int k);
  Eigen::VectorBlock<const Vector> coefficient(int k) const;
  double norm() const { return coeffs.norm(); }
};

// Multiplication by the pencil in coefficient form. The degree-(N+1)
// spillover coefficient is dropped; its norm is returned as leakage so
// truncation error stays observable.
struct PencilApplyResult {
  HardyVector value;
  double leakage = 0.0;
};

PencilApplyResult pencilApply(const LinearPencil& p, const HardyVector& f);
HardyVector pencilAdjointApply(const LinearPencil& p, const HardyVector& f);

// Banded action of a degree-d symbol as a dense block-Toeplitz matrix on
// coefficients 0..degree. Test oracle and the compression path for product
// symbols; never used for the main banded arithmetic.
Matrix denseSymbolMatrix(const std::vector<Matrix>& coeffs, int degree);

// A multiplication operator on the truncated space, tagged by how it acts.
// Shift and pencil designations run banded; the dense designation exists for
// oracles and degree >= 2 symbols.
struct HardyOperator {
  enum class Kind { Shift, Pencil, Dense };

  static HardyOperator shift(int fiberDim);
  static HardyOperator pencil(LinearPencil p);
  static HardyOperator dense(const std::vector<Matrix>& coeffs, int degree);

  PencilApplyResult apply(const HardyVector& f) const;
  HardyVector adjointApply(const HardyVector& f) const;
  Matrix toDense(int degree) const;
  int fiberDim() const { return fiberDim_; }
  Kind kind() const { return kind_; }

 private:
  Kind kind_ = Kind::Shift;
  int fiberDim_ = 0;
  LinearPencil pencil_;
  Matrix dense_;
  int denseDegree_ = 0;
};

// Compression gamma^* M_p gamma of a pencil multiplier to the range of an
// isometric embedding gamma (stacked coefficient blocks).
Matrix compress(const Matrix& gamma, int fiberDim, const LinearPencil& p,
                double tol = 1e-6);
Matrix compressSymbol(const Matrix& gamma, int fiberDim,
                      const std::vector<Matrix>& coeffs, double tol = 1e-6);

struct InnerCheckReport {
  double maxResidual = 0.0;
  int samples = 0;
  double tol = 0.0;
  bool inner = false;
};

// Max over equispaced torus samples of ||p(z)^* p(z) - I||; a diagnostic,
// not a proof (degree-one symbols are continuous on the closed disc).
InnerCheckReport innerCheck(const LinearPencil& p,
                            int nSamples = defaults::innerSamples,
                            double tol = defaults::tol);

}  // namespace bcldil
