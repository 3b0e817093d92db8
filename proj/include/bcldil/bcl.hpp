#pragma once

#include "bcldil/dilation.hpp"
#include "bcldil/hardy.hpp"
#include "bcldil/opcore.hpp"
#include "bcldil/types.hpp"

#include <optional>
#include <utility>

namespace bcldil {

// A unitary together with an orthogonal projection on a common fiber space.
// Each such triple generates a commuting pair of isometric multipliers whose
// product is the coefficient shift.
struct BCLTriple {
  int dimE = 0;
  Matrix u;  // unitary on the fiber
  Matrix p;  // orthogonal projection on the fiber
};

void validateTriple(const BCLTriple& triple, double tol = defaults::tol);

// Phi = (P U^*, P_perp U^*), Psi = (U P_perp, U P); satisfies
// Phi(z) Psi(z) = Psi(z) Phi(z) = z I identically.
std::pair<LinearPencil, LinearPencil> bclPencils(const BCLTriple& triple,
                                                 double tol = defaults::tol);

// A + z B (I - z D)^{-1} C for a unitary block matrix [[A,B],[C,D]].
Matrix transferFunction(const Matrix& a, const Matrix& b, const Matrix& c,
                        const Matrix& d, Complex z, double tol = 1e-8);

// Residual of the defect identity
//   I - tau(z)^* tau(z) = (1 - |z|^2) C^* (I - conj(z) D^*)^{-1} (I - z D)^{-1} C,
// which vanishes identically when the block matrix is unitary.
double transferIsometryGap(const Matrix& a, const Matrix& b, const Matrix& c,
                           const Matrix& d, Complex z);

struct BCLOptions {
  double tol = defaults::tol;
  double purityMargin = defaults::purityMargin;
  double rankTol = defaults::rankTol;
  double truncationTol = defaults::truncationTol;
  int maxDegree = defaults::maxDegree;
  std::optional<int> degreeOverride;
  int productSamples = defaults::productSamples;
  int innerSamples = defaults::innerSamples;
};

// Dilation engine: given commuting (S, T) with T pure, an isometry V out of
// the defect space of T, and a unitary [[A,B],[C,0]] acting the right way on
// the spanning vectors, produces the inner pencil A^* + z C^* B^* that
// intertwines with S through the lifted dilation of T.
struct ColligationDilationResult {
  LinearPencil phi;
  DilationMap piV;
  double residual = 0.0;
  double actionGap = 0.0;
};

ColligationDilationResult dilateViaColligation(const Matrix& t, const Matrix& s, const Matrix& v,
                                       const Matrix& a, const Matrix& b, const Matrix& c,
                                       const BCLOptions& opts = {});

struct BCLResidualReport {
  double commutatorNorm = 0.0;
  double gramGap = 0.0;          // || X^*X - Y^*Y || of the defining stacks
  double vIsometryGap = 0.0;     // || V^*V - I ||
  double unitaryGapU = 0.0;      // || U^*U - I ||
  double intertwineT1 = 0.0;     // || Pi_V T1^* - M_Phi^* Pi_V ||
  double intertwineT2 = 0.0;     // || Pi_V T2^* - M_Psi^* Pi_V ||
  double intertwineProduct = 0.0;
  double pencilProductGap = 0.0;  // max_z || Phi(z)Psi(z) - zI ||, both orders
  double innerGapPhi = 0.0;
  double innerGapPsi = 0.0;
  double isometryDefectPiV = 0.0;
  double tailBound = 0.0;
  int degree = 0;
};

// Everything one commuting pure pair produces: the triple, the isometry V
// into the joint defect fiber, the factor embeddings, the block unitaries
// behind both transfer functions, both pencils, the truncated dilation and
// its lift, and the residual report.
struct BCLDilationBundle {
  Matrix t1, t2, product;
  DefectData defectT1, defectT2, defectProduct;
  BCLTriple triple;
  Matrix v;            // defect fiber of the product -> E
  Matrix iota1, iota2; // embeddings of the factor defect fibers into E
  Matrix u1, u2;       // block unitaries realizing Phi and Psi
  LinearPencil phi, psi;
  DilationMap pi;      // over the product defect fiber
  DilationMap piV;     // lifted to E
  BCLResidualReport residuals;
};

BCLDilationBundle constructBCL(const Matrix& t1, const Matrix& t2,
                               const BCLOptions& opts = {});

}  // namespace bcldil
