#pragma once

#include <vector>

#include "dsm/matrix.hpp"

namespace dsm {

// Thin QR factorization of an m x n matrix, m >= n: q is m x n with
// orthonormal columns, r is n x n upper triangular. With positive_diag the
// diagonal of r is made real and positive by pushing unit phases into q,
// which fixes the factorization uniquely for full-rank input.
struct QRFactors {
    ComplexMatrix q;
    ComplexMatrix r;
};

QRFactors qr_decompose(const ComplexMatrix& a, bool positive_diag = true);

// LU factorization with partial pivoting, kept around for repeated solves.
class LUFactors {
public:
    explicit LUFactors(const ComplexMatrix& a);

    bool singular() const { return singular_; }
    Complex det() const { return det_; }

    // Solves A x = b; throws Singular if the factorization found a zero pivot.
    ComplexVector solve(const ComplexVector& b) const;

private:
    ComplexMatrix lu_;
    std::array<int, kMaxDim> perm_{};
    int n_;
    bool singular_;
    Complex det_;
};

Complex det(const ComplexMatrix& a);
double det(const RealMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);

// Singular values in descending order, by one-sided Jacobi on the columns.
std::vector<double> svd_singular_values(const ComplexMatrix& a);

// Volume expansion factor of A on the span of the orthonormal columns of
// u_k: the square root of det((A u_k)^* (A u_k)), computed stably as the
// product of |r_ii| from the QR factorization of A u_k. For k = d this is
// |det A|.
double gram_det(const ComplexMatrix& a, const ComplexMatrix& u_k);

}  // namespace dsm
