#pragma once

#include "bcldil/types.hpp"

namespace bcldil {

// Defect data of a contraction T: the Hermitian square root of I - T T^*,
// its numeric rank, an orthonormal basis of its range, and the defect
// operator expressed in range coordinates.
struct DefectData {
  Matrix defectOp;     // dim x dim, Hermitian PSD
  int rank = 0;        // eigenvalues of I - T T^* above rankTol
  Matrix basis;        // dim x rank, orthonormal columns, canonical order/phase
  Matrix coordDefect;  // rank x dim, basis^* defectOp
};

// Largest singular value, computed through the Gram matrix of the smaller side.
double opNorm(const Matrix& a);

double spectralRadius(const Matrix& a);

// Hermitian PSD square root via eigendecomposition with eigenvalue clamping.
Matrix psqrt(const Matrix& a, double tol = defaults::tol);

DefectData defect(const Matrix& t, double tol = defaults::tol,
                  double rankTol = defaults::rankTol);

bool isCommutingPair(const Matrix& t1, const Matrix& t2, double tol = defaults::tol);

bool isContraction(const Matrix& t, double tol = defaults::tol);

// Finite-dimensional purity: contraction with spectral radius at most
// 1 - purityMargin, which guarantees computable truncation tails.
bool isPureContraction(const Matrix& t, double tol = defaults::tol,
                       double purityMargin = defaults::purityMargin);

// Given X, Y with X^*X = Y^*Y (within tol), returns the unitary W with
// W X = Y that maps the canonical orthonormal basis of ran(X)^perp to the
// canonical one of ran(Y)^perp. The completion is one deterministic choice
// among many valid ones.
Matrix extendToUnitary(const Matrix& x, const Matrix& y, double tol = defaults::tol);

// True iff the largest reducing subspace on which the contraction acts
// unitarily is trivial; kernels intersected at the given tolerance.
bool cnuCheck(const Matrix& a, double tol = defaults::cnuTol);

// Basis conventions shared by all constructions: phases are fixed so the
// first significantly-nonzero entry is positive real, and bases of
// degenerate eigenspaces are ordered by the index of their largest-modulus
// entry. Exposed because tests assert bit-level determinism.
Vector canonicalPhase(Vector v);
Matrix orthonormalComplement(const Matrix& q, int dim);

}  // namespace bcldil
