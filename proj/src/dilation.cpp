#include "bcldil/dilation.hpp"

#include <cmath>
#include <sstream>

namespace bcldil {

namespace {

void requirePure(const Matrix& t, double purityMargin) {
  double rho = spectralRadius(t);
  if (!isContraction(t) || rho > 1.0 - purityMargin) {
    std::ostringstream os;
    os << "spectral radius " << rho << " exceeds 1 - purityMargin";
    fail(Errc::NotPure, os.str());
  }
}

// Incrementally computed squared norms a_k = ||D_T (T^*)^k||^2 together
// with a geometric cap: a_{k+m} <= a_k * q for q = ||(T^*)^m||^2 < 1, so
// sum_{k>N} a_k <= (a_{N+1} + ... + a_{N+m}) / (1 - q).
class TailSeries {
 public:
  TailSeries(const Matrix& t, const Matrix& defectOp, int maxDegree)
      : tAdj_(t.adjoint()), defectOp_(defectOp) {
    power_ = Matrix::Identity(t.rows(), t.cols());
    powerNormSq_.push_back(1.0);
    a_.push_back(squaredNorm(defectOp_));
    window_ = 1;
    while (powerNormSq(window_) > 0.5) {
      if (window_ > maxDegree) {
        fail(Errc::DegreeCapExceeded,
             "power norms decay too slowly to fit a geometric envelope");
      }
      ++window_;
    }
    q_ = powerNormSq(window_);
  }

  double term(int k) {
    while (static_cast<int>(a_.size()) <= k) advance();
    return a_[k];
  }

  double tailBound(int degree) {
    double sum = 0.0;
    for (int i = 1; i <= window_; ++i) sum += term(degree + i);
    return sum / (1.0 - q_);
  }

 private:
  static double squaredNorm(const Matrix& m) {
    double v = opNorm(m);
    return v * v;
  }

  double powerNormSq(int k) {
    while (static_cast<int>(powerNormSq_.size()) <= k) advance();
    return powerNormSq_[k];
  }

  void advance() {
    power_ = power_ * tAdj_;
    powerNormSq_.push_back(squaredNorm(power_));
    a_.push_back(squaredNorm(defectOp_ * power_));
  }

  Matrix tAdj_;
  Matrix defectOp_;
  Matrix power_;
  std::vector<double> powerNormSq_;
  std::vector<double> a_;
  int window_ = 1;
  double q_ = 0.0;
};

}  // namespace

Matrix DilationMap::stacked() const {
  Matrix out(static_cast<Eigen::Index>(fiberDim) * (degree + 1), sourceDim);
  for (int k = 0; k <= degree; ++k) {
    out.middleRows(static_cast<Eigen::Index>(k) * fiberDim, fiberDim) = blocks[k];
  }
  return out;
}

int chooseTruncationDegree(const Matrix& t, double tol, double purityMargin, int maxDegree) {
  requirePure(t, purityMargin);
  DefectData dd = defect(t);
  TailSeries tail(t, dd.defectOp, maxDegree);
  for (int n = 0; n <= maxDegree; ++n) {
    if (tail.tailBound(n) <= tol) return n;
  }
  std::ostringstream os;
  os << "no degree <= " << maxDegree << " reaches tail tolerance " << tol;
  fail(Errc::DegreeCapExceeded, os.str());
}

DilationMap buildPi(const Matrix& t, int degree, double purityMargin, double rankTol) {
  requirePure(t, purityMargin);
  if (degree < 0) fail(Errc::UsageError, "truncation degree must be nonnegative");
  DefectData dd = defect(t, defaults::tol, rankTol);

  DilationMap pi;
  pi.sourceDim = static_cast<int>(t.rows());
  pi.fiberDim = dd.rank;
  pi.degree = degree;
  pi.blocks.reserve(degree + 1);
  Matrix power = Matrix::Identity(t.rows(), t.cols());
  for (int k = 0; k <= degree; ++k) {
    pi.blocks.push_back(dd.coordDefect * power);
    power = power * t.adjoint();
  }
  TailSeries tail(t, dd.defectOp, std::max(defaults::maxDegree, 2 * degree + 2));
  pi.tailBound = tail.tailBound(degree);
  return pi;
}

DilationMap buildPiV(const DilationMap& pi, const Matrix& v, double tol) {
  if (v.cols() != pi.fiberDim) {
    fail(Errc::DimensionMismatch, "lift must accept the fiber of the dilation");
  }
  double gap = opNorm(Matrix(v.adjoint() * v) - Matrix::Identity(v.cols(), v.cols()));
  if (gap > tol) {
    std::ostringstream os;
    os << "||V^*V - I|| = " << gap << " exceeds tol " << tol;
    fail(Errc::NotIsometry, os.str());
  }
  DilationMap out;
  out.sourceDim = pi.sourceDim;
  out.fiberDim = static_cast<int>(v.rows());
  out.degree = pi.degree;
  out.tailBound = pi.tailBound;
  out.blocks.reserve(pi.blocks.size());
  for (const Matrix& b : pi.blocks) out.blocks.push_back(v * b);
  return out;
}

int minimalityRank(const DilationMap& pi, double rankTol) {
  if (pi.fiberDim == 0) return 0;
  Matrix gram = Matrix::Zero(pi.fiberDim, pi.fiberDim);
  for (const Matrix& b : pi.blocks) gram += b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()),
                                           Eigen::EigenvaluesOnly);
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > rankTol) ++rank;
  }
  return rank;
}

double intertwinerResidual(const DilationMap& gamma, const LinearPencil& op, const Matrix& s) {
  if (op.fiberDim() != gamma.fiberDim) {
    fail(Errc::FiberMismatch, "pencil fiber must match the dilation fiber");
  }
  if (s.rows() != s.cols() || s.rows() != gamma.sourceDim) {
    fail(Errc::DimensionMismatch, "operator must act on the dilation source space");
  }
  if (gamma.degree == 0) return 0.0;
  Matrix sAdj = s.adjoint();
  Matrix residual(static_cast<Eigen::Index>(gamma.fiberDim) * gamma.degree, gamma.sourceDim);
  for (int k = 0; k < gamma.degree; ++k) {
    residual.middleRows(static_cast<Eigen::Index>(k) * gamma.fiberDim, gamma.fiberDim) =
        gamma.blocks[k] * sAdj -
        (op.c0.adjoint() * gamma.blocks[k] + op.c1.adjoint() * gamma.blocks[k + 1]);
  }
  return opNorm(residual);
}

double isometryDefect(const DilationMap& pi) {
  Matrix gram = Matrix::Zero(pi.sourceDim, pi.sourceDim);
  for (const Matrix& b : pi.blocks) gram += b.adjoint() * b;
  return opNorm(gram - Matrix::Identity(pi.sourceDim, pi.sourceDim));
}

}  // namespace bcldil
