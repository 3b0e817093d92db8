#pragma once

#include "bcldil/bcl.hpp"
#include "bcldil/hardy.hpp"
#include "bcldil/types.hpp"

#include <vector>

namespace bcldil {

// A sampled point of the determinantal variety
//   det(Phi(z1 z2) - z1 I) = 0 and det(Psi(z1 z2) - z2 I) = 0,
// together with the source parameter z = z1 z2 and both determinant
// residuals.
struct VarietyPoint {
  Complex lambda1;
  Complex lambda2;
  Complex sourceZ;
  double residual1 = 0.0;
  double residual2 = 0.0;
};

enum class VarietyKind { Boundary, Interior };

struct VarietyPointSet {
  VarietyKind kind = VarietyKind::Boundary;
  std::vector<VarietyPoint> points;
  // interior sampling: candidates with a (numerically) zero eigenvalue are
  // excluded because z = lambda1 lambda2 cannot be inverted for them
  int zeroEigenvalueCount = 0;
};

// Joint spectrum of the commuting unitary pair (Phi(z), Psi(z)) for |z| = 1:
// eigenvalues of Phi(z) paired with lambda2 = z / lambda1, each pairing
// verified through the second determinant residual.
std::vector<VarietyPoint> torusJointSpectrum(const LinearPencil& phi, const LinearPencil& psi,
                                             Complex z, double tol = 1e-8);

VarietyPointSet sampleBoundaryVariety(const LinearPencil& phi, const LinearPencil& psi,
                                      int nSamples, double tol = 1e-8);

struct GridSpec {
  int nRadial = 64;
  int nAngular = 64;
  double maxRadius = 0.95;
  std::vector<Complex> extraPoints;  // explicit disc points, appended to the grid
};

VarietyPointSet sampleInteriorVariety(const LinearPencil& phi, const LinearPencil& psi,
                                      const GridSpec& grid, double tol = 1e-8);

// Finitely supported polynomial in two variables; coefficient of
// z1^i z2^j at index i * (degree2 + 1) + j.
struct BivariatePolynomial {
  int degree1 = 0;
  int degree2 = 0;
  std::vector<Complex> coeffs;

  static BivariatePolynomial zero(int degree1, int degree2);
  Complex& at(int i, int j);
  Complex at(int i, int j) const;
  Complex eval(Complex z1, Complex z2) const;
};

Matrix evalPolyPair(const BivariatePolynomial& p, const Matrix& t1, const Matrix& t2,
                    double commTol = defaults::tol);

struct VnCertificate {
  double lhs = 0.0;    // || p(T1, T2) ||
  double rhs = 0.0;    // max |p| over the sampled boundary
  double margin = 0.0; // rhs - lhs
  double slack = 0.0;
  bool pass = false;
};

VnCertificate vnCertificate(const BivariatePolynomial& p, const Matrix& t1, const Matrix& t2,
                            const VarietyPointSet& boundary,
                            double slack = defaults::vnSlack);

// Both multiplier constants completely non-unitary: a hint (not a proof)
// that the variety is distinguished.
bool distinguishedHint(const BCLTriple& triple, double tol = defaults::cnuTol);

}  // namespace bcldil
