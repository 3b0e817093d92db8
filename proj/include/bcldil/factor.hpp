#pragma once

#include "bcldil/bcl.hpp"
#include "bcldil/dilation.hpp"
#include "bcldil/hardy.hpp"

#include <array>

namespace bcldil {

// Degree-two coefficients of the symbol product a(z) b(z). Kept out of
// LinearPencil on purpose: degree-one symbols are the object of interest,
// products only appear in verification.
std::array<Matrix, 3> productSymbol(const LinearPencil& a, const LinearPencil& b);

// Distance of ran(Gamma) from being invariant under the adjoint multiplier,
// measured below the top truncation block.
double jointInvarianceCheck(const DilationMap& pi, const LinearPencil& p);

struct FactorResiduals {
  double compressionT1 = 0.0;      // || Gamma^* M_phi Gamma - T1 ||
  double compressionT2 = 0.0;
  double compressionProduct = 0.0; // worst of the two product orders vs T1 T2
  double jointInvariance = 0.0;    // worst of the two adjoint invariance gaps
  double intertwinePhi = 0.0;      // || Pi T1^* - M_phi^* Pi ||
  double intertwinePsi = 0.0;
};

// The factor symbols over the defect fiber of the product: compressions of
// the bundle pencils by V, verified against the unlifted dilation.
struct FactorizationResult {
  LinearPencil phiSmall;
  LinearPencil psiSmall;
  Matrix v;
  FactorResiduals residuals;
};

FactorizationResult pullBack(const BCLDilationBundle& bundle);

struct CompressionReport {
  double compressionT1 = 0.0;
  double compressionT2 = 0.0;
  double compressionProductPhiPsi = 0.0;
  double compressionProductPsiPhi = 0.0;
  double jointInvariancePhi = 0.0;
  double jointInvariancePsi = 0.0;
  double noncommutativityGap = 0.0;  // coefficient gap between the product orders
};

CompressionReport verifyFactorization(const Matrix& t1, const Matrix& t2,
                                const FactorizationResult& result, const DilationMap& pi);

}  // namespace bcldil
