#pragma once

#include "bcldil/types.hpp"

#include <cstdint>
#include <utility>

namespace bcldil {

// Commuting-by-construction pair: both matrices are low-degree polynomials
// in one seeded random matrix, rescaled so each factor is a contraction and
// the product has spectral radius at most spectralCap. Deterministic per
// seed, with a portable gaussian sampler (no library distributions).
std::pair<Matrix, Matrix> randomCommutingPair(int dim, std::uint64_t seed,
                                              double spectralCap = 0.9);

// Haar-style unitary: QR of a complex gaussian matrix with the R-diagonal
// phases absorbed.
Matrix randomUnitary(int dim, std::uint64_t seed);

// Unitary on C^{h1+h2} whose bottom-right h2 x h2 corner vanishes; the shape
// every inner degree-one transfer function comes from.
Matrix randomZeroCornerUnitary(int h1, int h2, std::uint64_t seed);

Matrix randomComplexMatrix(int rows, int cols, std::uint64_t seed);

}  // namespace bcldil
