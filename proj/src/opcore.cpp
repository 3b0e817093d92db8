#include "bcldil/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace bcldil {

const char* errcName(Errc code) {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NotContraction: return "NotContraction";
    case Errc::NotPure: return "NotPure";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::FiberMismatch: return "FiberMismatch";
    case Errc::GramMismatch: return "GramMismatch";
    case Errc::IsometrySolveFailed: return "IsometrySolveFailed";
    case Errc::ActionMismatch: return "ActionMismatch";
    case Errc::DegreeCapExceeded: return "DegreeCapExceeded";
    case Errc::SingularResolvent: return "SingularResolvent";
    case Errc::InvalidTriple: return "InvalidTriple";
    case Errc::PairingFailure: return "PairingFailure";
    case Errc::EmptyBoundary: return "EmptyBoundary";
    case Errc::ParseError: return "ParseError";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NonSquare: return "NonSquare";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::UsageError: return "UsageError";
  }
  return "UnknownError";
}

double opNorm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Matrix gram = a.rows() >= a.cols() ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double spectralRadius(const Matrix& a) {
  if (a.rows() != a.cols()) fail(Errc::NonSquare, "spectral radius needs a square matrix");
  if (a.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

void requireSquare(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << a.rows() << "x" << a.cols();
    fail(Errc::NonSquare, os.str());
  }
}

// Index of the first entry whose modulus is significant relative to the
// vector norm; used as the anchor for phase fixing.
int anchorIndex(const Vector& v) {
  double scale = v.norm();
  if (scale == 0.0) return 0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8 * scale) return i;
  }
  return 0;
}

int largestModulusIndex(const Vector& v) {
  int best = 0;
  double bestAbs = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    double m = std::abs(v(i));
    if (m > bestAbs) {
      bestAbs = m;
      best = i;
    }
  }
  return best;
}

// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
// descending and eigenvectors canonicalized; consecutive eigenvalues closer
// than tieTol are reordered by their largest-modulus entry index.
struct HermitianEigen {
  std::vector<double> values;
  std::vector<Vector> vectors;
};

HermitianEigen hermitianEigenSorted(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const int n = static_cast<int>(h.rows());
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = es.eigenvalues()(n - 1 - i);  // descending
    out.vectors[i] = canonicalPhase(es.eigenvectors().col(n - 1 - i));
  }
  const double tieTol = 1e-12 * std::max(1.0, std::abs(out.values.empty() ? 0.0 : out.values[0]));
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && std::abs(out.values[end - 1] - out.values[end]) <= tieTol) ++end;
    if (end - start > 1) {
      std::vector<int> idx(end - start);
      std::iota(idx.begin(), idx.end(), start);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return largestModulusIndex(out.vectors[a]) < largestModulusIndex(out.vectors[b]);
      });
      std::vector<double> va(end - start);
      std::vector<Vector> vv(end - start);
      for (int i = 0; i < end - start; ++i) {
        va[i] = out.values[idx[i]];
        vv[i] = out.vectors[idx[i]];
      }
      for (int i = 0; i < end - start; ++i) {
        out.values[start + i] = va[i];
        out.vectors[start + i] = std::move(vv[i]);
      }
    }
    start = end;
  }
  return out;
}

}  // namespace

Vector canonicalPhase(Vector v) {
  int i = anchorIndex(v);
  if (i < v.size()) {
    Complex a = v(i);
    double m = std::abs(a);
    if (m > 0.0) v *= std::conj(a) / m;
  }
  return v;
}

Matrix orthonormalComplement(const Matrix& q, int dim) {
  Matrix proj = Matrix::Identity(dim, dim);
  if (q.cols() > 0) proj -= q * q.adjoint();
  HermitianEigen eig = hermitianEigenSorted(proj);
  std::vector<Vector> keep;
  for (int i = 0; i < dim; ++i) {
    if (eig.values[i] > 0.5) keep.push_back(eig.vectors[i]);
  }
  std::stable_sort(keep.begin(), keep.end(), [](const Vector& a, const Vector& b) {
    return largestModulusIndex(a) < largestModulusIndex(b);
  });
  Matrix out(dim, static_cast<int>(keep.size()));
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) out.col(i) = keep[i];
  return out;
}

Matrix psqrt(const Matrix& a, double tol) {
  requireSquare(a, "psqrt input");
  double hermGap = opNorm(a - a.adjoint());
  if (hermGap > tol) {
    std::ostringstream os;
    os << "||A - A^*|| = " << hermGap << " exceeds tol " << tol;
    fail(Errc::NotHermitian, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  double minEig = a.rows() > 0 ? es.eigenvalues().minCoeff() : 0.0;
  if (minEig < -tol) {
    std::ostringstream os;
    os << "minimum eigenvalue " << minEig << " below -tol";
    fail(Errc::NotPSD, os.str());
  }
  Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
}

bool isContraction(const Matrix& t, double tol) {
  requireSquare(t, "contraction predicate input");
  return opNorm(t) <= 1.0 + tol;
}

bool isCommutingPair(const Matrix& t1, const Matrix& t2, double tol) {
  requireSquare(t1, "T1");
  requireSquare(t2, "T2");
  if (t1.rows() != t2.rows()) {
    fail(Errc::DimensionMismatch, "commuting pair needs matrices of equal dimension");
  }
  return opNorm(t1 * t2 - t2 * t1) <= tol;
}

bool isPureContraction(const Matrix& t, double tol, double purityMargin) {
  return isContraction(t, tol) && spectralRadius(t) <= 1.0 - purityMargin;
}

DefectData defect(const Matrix& t, double tol, double rankTol) {
  requireSquare(t, "defect input");
  if (!isContraction(t, tol)) {
    std::ostringstream os;
    os << "||T|| = " << opNorm(t) << " exceeds 1 + tol";
    fail(Errc::NotContraction, os.str());
  }
  const int n = static_cast<int>(t.rows());
  Matrix gram = Matrix::Identity(n, n) - t * t.adjoint();
  HermitianEigen eig = hermitianEigenSorted(gram);

  DefectData out;
  out.rank = 0;
  while (out.rank < n && eig.values[out.rank] > rankTol) ++out.rank;
  out.basis = Matrix(n, out.rank);
  Matrix sqrtDiag = Matrix::Zero(n, n);
  Matrix q(n, n);
  for (int i = 0; i < n; ++i) {
    q.col(i) = eig.vectors[i];
    sqrtDiag(i, i) = std::sqrt(std::max(0.0, eig.values[i]));
    if (i < out.rank) out.basis.col(i) = eig.vectors[i];
  }
  out.defectOp = q * sqrtDiag * q.adjoint();
  out.coordDefect = out.basis.adjoint() * out.defectOp;
  return out;
}

Matrix extendToUnitary(const Matrix& x, const Matrix& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    fail(Errc::DimensionMismatch, "extendToUnitary needs X and Y of equal shape");
  }
  const int e = static_cast<int>(x.rows());
  Matrix gram = x.adjoint() * x;
  double gramGap = opNorm(gram - y.adjoint() * y);
  if (gramGap > tol) {
    std::ostringstream os;
    os << "||X^*X - Y^*Y|| = " << gramGap << " exceeds tol " << tol;
    fail(Errc::GramMismatch, os.str());
  }

  HermitianEigen eig = hermitianEigenSorted(gram);
  std::vector<Vector> xs;
  std::vector<Vector> ys;
  for (int i = 0; i < static_cast<int>(eig.values.size()); ++i) {
    if (eig.values[i] > defaults::rankTol) {
      double s = std::sqrt(eig.values[i]);
      xs.push_back(x * eig.vectors[i] / s);
      ys.push_back(y * eig.vectors[i] / s);
    }
  }
  const int k = static_cast<int>(xs.size());
  Matrix qx(e, k);
  Matrix qy(e, k);
  for (int i = 0; i < k; ++i) {
    qx.col(i) = xs[i];
    qy.col(i) = ys[i];
  }
  Matrix qxc = orthonormalComplement(qx, e);
  Matrix qyc = orthonormalComplement(qy, e);
  if (qxc.cols() != qyc.cols()) {
    fail(Errc::GramMismatch, "range defects of X and Y disagree; Gram data inconsistent");
  }
  Matrix w = qy * qx.adjoint() + qyc * qxc.adjoint();

  // polar correction: snaps W onto the unitary group without moving the
  // prescribed action beyond the existing error level
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (w.adjoint() * w + (w.adjoint() * w).adjoint()));
  Eigen::VectorXd inv = es.eigenvalues().cwiseMax(1e-30).cwiseSqrt().cwiseInverse();
  w = w * es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  return w;
}

bool cnuCheck(const Matrix& a, double tol) {
  requireSquare(a, "cnuCheck input");
  if (!isContraction(a, tol)) {
    std::ostringstream os;
    os << "||A|| = " << opNorm(a) << " exceeds 1 + tol";
    fail(Errc::NotContraction, os.str());
  }
  const int n = static_cast<int>(a.rows());
  if (n == 0) return true;
  // squared defects share the kernels of the defect operators and avoid the
  // sqrt(eps) noise floor a square root of a near-zero PSD matrix would add
  Matrix da = Matrix::Identity(n, n) - a * a.adjoint();
  Matrix dastar = Matrix::Identity(n, n) - a.adjoint() * a;

  Matrix stack(2 * n * n, n);
  Matrix powA = Matrix::Identity(n, n);
  Matrix powAadj = Matrix::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    stack.middleRows(2 * k * n, n) = da * powA;
    stack.middleRows((2 * k + 1) * n, n) = dastar * powAadj;
    powA = powA * a;
    powAadj = powAadj * a.adjoint();
  }
  Matrix gram = stack.adjoint() * stack;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
  double smallest = std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
  return smallest > tol;
}

}  // namespace bcldil
