#include "bcldil/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bcldil {

namespace {

double argKey(Complex c) {
  double a = std::arg(c);
  if (a >= std::numbers::pi - 1e-15) a -= 2.0 * std::numbers::pi;
  return a;
}

void sortCanonically(std::vector<VarietyPoint>& points) {
  std::stable_sort(points.begin(), points.end(), [](const VarietyPoint& a, const VarietyPoint& b) {
    double az = argKey(a.sourceZ), bz = argKey(b.sourceZ);
    if (az != bz) return az < bz;
    double ar = std::abs(a.sourceZ), br = std::abs(b.sourceZ);
    if (ar != br) return ar < br;
    return argKey(a.lambda1) < argKey(b.lambda1);
  });
}

double detResidual(const LinearPencil& p, Complex z, Complex lambda) {
  Matrix m = evalPencil(p, z);
  m -= lambda * Matrix::Identity(m.rows(), m.cols());
  return std::abs(m.determinant());
}

}  // namespace

std::vector<VarietyPoint> torusJointSpectrum(const LinearPencil& phi, const LinearPencil& psi,
                                             Complex z, double tol) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "|z| = " << std::abs(z) << " is not unimodular";
    fail(Errc::NotUnimodular, os.str());
  }
  if (phi.fiberDim() != psi.fiberDim()) {
    fail(Errc::FiberMismatch, "the two pencils must share a fiber");
  }
  Matrix phiZ = evalPencil(phi, z);
  Eigen::ComplexEigenSolver<Matrix> es(phiZ, /*computeEigenvectors=*/false);

  std::vector<VarietyPoint> out;
  out.reserve(phi.fiberDim());
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    VarietyPoint pt;
    pt.lambda1 = es.eigenvalues()(i);
    pt.sourceZ = z;
    pt.lambda2 = z / pt.lambda1;
    pt.residual1 = detResidual(phi, z, pt.lambda1);
    pt.residual2 = detResidual(psi, z, pt.lambda2);
    if (pt.residual2 > tol) {
      std::ostringstream os;
      os << "second determinant residual " << pt.residual2 << " exceeds tol " << tol
         << " at z = (" << z.real() << ", " << z.imag() << ")";
      fail(Errc::PairingFailure, os.str());
    }
    out.push_back(pt);
  }
  sortCanonically(out);
  return out;
}

VarietyPointSet sampleBoundaryVariety(const LinearPencil& phi, const LinearPencil& psi,
                                      int nSamples, double tol) {
  if (nSamples < 1) fail(Errc::UsageError, "boundary sampling needs nSamples >= 1");
  VarietyPointSet set;
  set.kind = VarietyKind::Boundary;
  for (int j = 0; j < nSamples; ++j) {
    double theta = 2.0 * std::numbers::pi * j / nSamples;
    Complex z(std::cos(theta), std::sin(theta));
    auto pts = torusJointSpectrum(phi, psi, z, tol);
    set.points.insert(set.points.end(), pts.begin(), pts.end());
  }
  sortCanonically(set.points);
  return set;
}

VarietyPointSet sampleInteriorVariety(const LinearPencil& phi, const LinearPencil& psi,
                                      const GridSpec& grid, double tol) {
  if (phi.fiberDim() != psi.fiberDim()) {
    fail(Errc::FiberMismatch, "the two pencils must share a fiber");
  }
  std::vector<Complex> ws;
  for (int i = 0; i < grid.nRadial; ++i) {
    double radius = grid.maxRadius * (i + 1) / grid.nRadial;
    for (int j = 0; j < grid.nAngular; ++j) {
      double theta = 2.0 * std::numbers::pi * j / grid.nAngular;
      ws.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
    }
  }
  ws.insert(ws.end(), grid.extraPoints.begin(), grid.extraPoints.end());

  VarietyPointSet set;
  set.kind = VarietyKind::Interior;
  for (Complex w : ws) {
    if (std::abs(w) >= 1.0) fail(Errc::UsageError, "interior grid point outside the open disc");
    Matrix phiW = evalPencil(phi, w);
    Eigen::ComplexEigenSolver<Matrix> es(phiW, /*computeEigenvectors=*/false);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      Complex l1 = es.eigenvalues()(i);
      if (std::abs(l1) <= 1e-12) {
        ++set.zeroEigenvalueCount;
        continue;
      }
      Complex l2 = w / l1;
      if (std::abs(l1) >= 1.0 || std::abs(l2) >= 1.0) continue;
      VarietyPoint pt;
      pt.lambda1 = l1;
      pt.lambda2 = l2;
      pt.sourceZ = w;
      pt.residual1 = detResidual(phi, w, l1);
      pt.residual2 = detResidual(psi, w, l2);
      if (pt.residual2 > tol) continue;
      set.points.push_back(pt);
    }
  }
  sortCanonically(set.points);
  return set;
}

BivariatePolynomial BivariatePolynomial::zero(int degree1, int degree2) {
  BivariatePolynomial p;
  p.degree1 = degree1;
  p.degree2 = degree2;
  p.coeffs.assign(static_cast<size_t>(degree1 + 1) * (degree2 + 1), Complex(0, 0));
  return p;
}

Complex& BivariatePolynomial::at(int i, int j) {
  return coeffs[static_cast<size_t>(i) * (degree2 + 1) + j];
}

Complex BivariatePolynomial::at(int i, int j) const {
  return coeffs[static_cast<size_t>(i) * (degree2 + 1) + j];
}

Complex BivariatePolynomial::eval(Complex z1, Complex z2) const {
  // Horner in z1, inner Horner in z2
  Complex acc(0, 0);
  for (int i = degree1; i >= 0; --i) {
    Complex row(0, 0);
    for (int j = degree2; j >= 0; --j) row = row * z2 + at(i, j);
    acc = acc * z1 + row;
  }
  return acc;
}

Matrix evalPolyPair(const BivariatePolynomial& p, const Matrix& t1, const Matrix& t2,
                    double commTol) {
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows()) {
    fail(Errc::DimensionMismatch, "polynomial evaluation needs square matrices of equal size");
  }
  if (opNorm(t1 * t2 - t2 * t1) > commTol) {
    fail(Errc::NotCommuting, "monomial ordering would be ambiguous for a non-commuting pair");
  }
  if (p.degree1 > defaults::polyDegreeCap || p.degree2 > defaults::polyDegreeCap) {
    fail(Errc::DegreeCapExceeded, "polynomial degree exceeds the evaluation cap");
  }
  const int n = static_cast<int>(t1.rows());
  std::vector<Matrix> pow1(p.degree1 + 1), pow2(p.degree2 + 1);
  pow1[0] = Matrix::Identity(n, n);
  for (int i = 1; i <= p.degree1; ++i) pow1[i] = pow1[i - 1] * t1;
  pow2[0] = Matrix::Identity(n, n);
  for (int j = 1; j <= p.degree2; ++j) pow2[j] = pow2[j - 1] * t2;

  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i <= p.degree1; ++i) {
    for (int j = 0; j <= p.degree2; ++j) {
      Complex c = p.at(i, j);
      if (c != Complex(0, 0)) out += c * (pow1[i] * pow2[j]);
    }
  }
  return out;
}

VnCertificate vnCertificate(const BivariatePolynomial& p, const Matrix& t1, const Matrix& t2,
                            const VarietyPointSet& boundary, double slack) {
  if (boundary.points.empty()) {
    fail(Errc::EmptyBoundary, "certificate needs a nonempty boundary sample");
  }
  VnCertificate cert;
  cert.slack = slack;
  cert.lhs = opNorm(evalPolyPair(p, t1, t2));
  for (const VarietyPoint& pt : boundary.points) {
    cert.rhs = std::max(cert.rhs, std::abs(p.eval(pt.lambda1, pt.lambda2)));
  }
  cert.margin = cert.rhs - cert.lhs;
  cert.pass = cert.lhs <= cert.rhs + slack;
  return cert;
}

bool distinguishedHint(const BCLTriple& triple, double tol) {
  validateTriple(triple, std::max(tol, defaults::tol));
  Matrix pPerp = Matrix::Identity(triple.dimE, triple.dimE) - triple.p;
  return cnuCheck(triple.p * triple.u.adjoint(), tol) && cnuCheck(triple.u * pPerp, tol);
}

}  // namespace bcldil
