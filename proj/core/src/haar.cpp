#include "dsm/haar.hpp"

#include <cmath>

#include "dsm/linalg.hpp"

namespace dsm {

ComplexMatrix haar_unitary(int d, RngStream& rng) {
    ComplexMatrix::check_shape(d, d);
    if (d < 2) throw DimOutOfRange("haar_unitary needs d >= 2");
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.normal_complex();
    QRFactors f = qr_decompose(g, true);
    return f.q;
}

RealMatrix haar_orthogonal(int d, RngStream& rng, int det_sign) {
    RealMatrix::check_shape(d, d);
    if (d < 2) throw DimOutOfRange("haar_orthogonal needs d >= 2");
    if (det_sign != 1 && det_sign != -1)
        throw BadParameter("det_sign must be +1 or -1");

    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), 0.0);
    QRFactors f = qr_decompose(g, true);

    RealMatrix q(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q(i, j) = f.q(i, j).real();

    double dq = det(q);
    if (dq * det_sign < 0) {
        for (int i = 0; i < d; ++i) q(i, d - 1) = -q(i, d - 1);
    }
    return q;
}

RealVector random_unit_vector(int d, RngStream& rng) {
    RealVector v(d);
    double n2 = 0;
    do {
        n2 = 0;
        for (int i = 0; i < d; ++i) {
            v[i] = rng.normal();
            n2 += v[i] * v[i];
        }
    } while (n2 < 1e-280);
    double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < d; ++i) v[i] *= inv;
    return v;
}

ComplexVector random_complex_projective_point(int d, RngStream& rng) {
    ComplexVector v(d);
    double n2 = 0;
    do {
        n2 = 0;
        for (int i = 0; i < d; ++i) {
            v[i] = rng.normal_complex();
            n2 += std::norm(v[i]);
        }
    } while (n2 < 1e-280);
    double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < d; ++i) v[i] *= inv;
    return v;
}

}  // namespace dsm
