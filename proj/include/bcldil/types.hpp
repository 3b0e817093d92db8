#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bcldil {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Error taxonomy shared by every module. Construction code throws; the CLI
// maps codes to diagnostics and exit codes.
enum class Errc {
  NotHermitian,
  NotPSD,
  NotContraction,
  NotPure,
  NotIsometry,
  NotUnitary,
  NotCommuting,
  NotUnimodular,
  DimensionMismatch,
  FiberMismatch,
  GramMismatch,
  IsometrySolveFailed,
  ActionMismatch,
  DegreeCapExceeded,
  SingularResolvent,
  InvalidTriple,
  PairingFailure,
  EmptyBoundary,
  ParseError,
  SyntaxError,
  NonSquare,
  SizeMismatch,
  UsageError,
};

const char* errcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errcName(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

namespace defaults {
inline constexpr double tol = 1e-10;
inline constexpr double purityMargin = 1e-6;
inline constexpr double rankTol = 1e-10;
inline constexpr double truncationTol = 1e-10;
inline constexpr double cnuTol = 1e-8;
inline constexpr double vnSlack = 1e-6;
inline constexpr int maxDegree = 10000;
inline constexpr int innerSamples = 256;
inline constexpr int productSamples = 64;
inline constexpr int boundarySamples = 2048;
inline constexpr int polyDegreeCap = 16;
}  // namespace defaults

}  // namespace bcldil
