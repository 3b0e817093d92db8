#pragma once

#include "bcldil/hardy.hpp"
#include "bcldil/opcore.hpp"
#include "bcldil/types.hpp"

#include <vector>

namespace bcldil {

// Truncated isometric dilation of a pure contraction in coefficient form.
// Block k is the defect operator (in range coordinates) composed with the
// k-th adjoint power; tailBound dominates the isometry defect of the
// truncation.
struct DilationMap {
  int sourceDim = 0;
  int fiberDim = 0;
  int degree = 0;
  std::vector<Matrix> blocks;
  double tailBound = 0.0;

  Matrix stacked() const;
};

// Smallest N whose tail of squared block norms, bounded by a geometric
// envelope fitted from computed power norms, falls below tol. The envelope
// avoids the usual non-normality trap where spectral-radius powers
// underestimate operator-norm powers.
int chooseTruncationDegree(const Matrix& t, double tol,
                           double purityMargin = defaults::purityMargin,
                           int maxDegree = defaults::maxDegree);

DilationMap buildPi(const Matrix& t, int degree,
                    double purityMargin = defaults::purityMargin,
                    double rankTol = defaults::rankTol);

// Lift through an isometry of the fiber space; preserves the isometry
// defect and the intertwining relation block by block.
DilationMap buildPiV(const DilationMap& pi, const Matrix& v, double tol = defaults::tol);

// Numeric rank of all blocks stacked side by side; equals the defect rank
// exactly when the truncated dilation is minimal in the fiber sense.
int minimalityRank(const DilationMap& pi, double rankTol = defaults::rankTol);

// || Gamma S^* - M_p^* Gamma || over coefficient blocks 0..N-1. The top
// block is excluded: truncation makes the identity fail there by design,
// and that failure is accounted for in tailBound instead.
double intertwinerResidual(const DilationMap& gamma, const LinearPencil& op, const Matrix& s);

double isometryDefect(const DilationMap& pi);

}  // namespace bcldil
