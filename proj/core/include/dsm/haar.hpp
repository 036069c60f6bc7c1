#pragma once

#include "dsm/matrix.hpp"
#include "dsm/rng.hpp"

namespace dsm {

// Haar-distributed U(d) sample: complex Ginibre matrix, QR factorization,
// R-diagonal phases absorbed so the result does not depend on the arbitrary
// sign/phase choices inside the factorization.
ComplexMatrix haar_unitary(int d, RngStream& rng);

// Haar sample from O(d), restricted to the chosen determinant coset:
// det_sign = +1 gives SO(d), det_sign = -1 the reflection coset (obtained by
// flipping the last column when needed).
RealMatrix haar_orthogonal(int d, RngStream& rng, int det_sign = +1);

// Uniform point on the real unit sphere in R^d.
RealVector random_unit_vector(int d, RngStream& rng);

// Uniform point on the complex projective space, represented by a unit
// vector with Gaussian-invariant law. This is the reference sampler for the
// stationary measure on CP^{d-1}.
ComplexVector random_complex_projective_point(int d, RngStream& rng);

}  // namespace dsm
