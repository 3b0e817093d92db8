#include "bcldil/generate.hpp"

#include "bcldil/opcore.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bcldil {

namespace {

// Box-Muller over the raw engine output; std::normal_distribution is
// implementation-defined, and seeded reproducibility is part of the contract.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    double u = uniform01();
    double v = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u));
    double angle = 2.0 * std::numbers::pi * v;
    spare_ = radius * std::sin(angle);
    haveSpare_ = true;
    return radius * std::cos(angle);
  }

  Complex complexUnit() {
    double angle = 2.0 * std::numbers::pi * uniform01();
    return {std::cos(angle), std::sin(angle)};
  }

  double uniform01() {
    // 53-bit mantissa in (0, 1]
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

Matrix gaussianMatrix(int rows, int cols, Gaussian& g) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(), g());
  }
  return m;
}

Matrix haarUnitary(int dim, Gaussian& g) {
  Matrix m = gaussianMatrix(dim, dim, g);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    double mod = std::abs(d);
    q.col(i) *= mod > 0 ? d / mod : Complex(1, 0);
  }
  return q;
}

}  // namespace

Matrix randomComplexMatrix(int rows, int cols, std::uint64_t seed) {
  Gaussian g(seed);
  return gaussianMatrix(rows, cols, g);
}

Matrix randomUnitary(int dim, std::uint64_t seed) {
  Gaussian g(seed);
  return haarUnitary(dim, g);
}

Matrix randomZeroCornerUnitary(int h1, int h2, std::uint64_t seed) {
  if (h2 > h1) fail(Errc::UsageError, "zero-corner unitaries need h2 <= h1");
  Gaussian g(seed);
  Matrix w = haarUnitary(h1, g);
  // isometry spanning an h2-dimensional subspace of the first block
  Matrix j = gaussianMatrix(h1, h2, g);
  Eigen::HouseholderQR<Matrix> qr(j);
  Matrix q = qr.householderQ() * Matrix::Identity(h1, h2);
  Matrix proj = Matrix::Identity(h1, h1) - q * q.adjoint();

  Matrix u(h1 + h2, h1 + h2);
  u.topLeftCorner(h1, h1) = w * proj;
  u.topRightCorner(h1, h2) = w * q;
  u.bottomLeftCorner(h2, h1) = q.adjoint();
  u.bottomRightCorner(h2, h2) = Matrix::Zero(h2, h2);
  return u;
}

std::pair<Matrix, Matrix> randomCommutingPair(int dim, std::uint64_t seed, double spectralCap) {
  if (dim < 1) fail(Errc::UsageError, "pair dimension must be at least 1");
  if (spectralCap <= 0.0 || spectralCap >= 1.0) {
    fail(Errc::UsageError, "spectralCap must lie strictly between 0 and 1");
  }
  Gaussian g(seed);
  Matrix j = gaussianMatrix(dim, dim, g);
  double jNorm = opNorm(j);
  if (jNorm > 0) j /= jNorm;

  auto randomPolynomial = [&](const Matrix& base) {
    Matrix acc = Matrix::Zero(dim, dim);
    Matrix power = Matrix::Identity(dim, dim);
    for (int d = 0; d <= 3; ++d) {
      acc += (std::sqrt(g.uniform01()) * g.complexUnit()) * power;
      power = power * base;
    }
    return acc;
  };

  Matrix t1 = randomPolynomial(j);
  Matrix t2 = randomPolynomial(j);
  double n1 = opNorm(t1);
  double n2 = opNorm(t2);
  if (n1 > 1.0) t1 /= n1;
  if (n2 > 1.0) t2 /= n2;

  double rho = spectralRadius(t1 * t2);
  if (rho > spectralCap) {
    double shrink = std::sqrt(spectralCap / rho);
    t1 *= shrink;
    t2 *= shrink;
  }
  return {t1, t2};
}

}  // namespace bcldil
