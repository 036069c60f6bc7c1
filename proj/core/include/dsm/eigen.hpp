#pragma once

#include <vector>

#include "dsm/matrix.hpp"

namespace dsm {

// Eigendecomposition sorted by strictly descending eigenvalue modulus.
// Vectors are unit norm and phase canonical: the largest-modulus component
// is real and positive, so atoms built from them are reproducible.
struct EigenSystem {
    std::vector<Complex> values;
    std::vector<ComplexVector> vectors;
    std::vector<double> residuals;
};

// Eigenvalues only, sorted by descending modulus. Ties are allowed here;
// callers that need the strict ordering use eigen_by_modulus.
std::vector<Complex> eigenvalues_by_modulus(const ComplexMatrix& a);

// Full decomposition. Throws ModulusTie when any adjacent pair of moduli
// differs by less than tie_tol * ||a||_F, since the measure constructions
// downstream need an unambiguous ordering of eigendirections. Monte Carlo
// callers treat that as a skip-and-resample signal; the tie set has Haar
// measure zero.
EigenSystem eigen_by_modulus(const ComplexMatrix& a, double tie_tol = 1e-9);

}  // namespace dsm
