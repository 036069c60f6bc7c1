#include "dsm/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dsm {

QRFactors qr_decompose(const ComplexMatrix& a, bool positive_diag) {
    const int m = a.rows();
    const int n = a.cols();
    ComplexMatrix r = a;
    ComplexMatrix q = ComplexMatrix::identity(m);

    // Householder triangularization; q accumulates the product of reflectors.
    for (int j = 0; j < n && j < m - 1; ++j) {
        double xnorm = 0;
        for (int i = j; i < m; ++i) xnorm += std::norm(r(i, j));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;

        Complex x0 = r(j, j);
        Complex phase = (std::abs(x0) > 0) ? x0 / std::abs(x0) : Complex(1, 0);
        Complex alpha = -phase * xnorm;

        ComplexVector v(m);
        for (int i = j; i < m; ++i) v[i] = r(i, j);
        v[j] -= alpha;
        double vnorm2 = 0;
        for (int i = j; i < m; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;

        for (int col = j; col < n; ++col) {
            Complex s{};
            for (int i = j; i < m; ++i) s += std::conj(v[i]) * r(i, col);
            s *= 2.0 / vnorm2;
            for (int i = j; i < m; ++i) r(i, col) -= s * v[i];
        }
        for (int row = 0; row < m; ++row) {
            Complex s{};
            for (int i = j; i < m; ++i) s += q(row, i) * v[i];
            s *= 2.0 / vnorm2;
            for (int i = j; i < m; ++i) q(row, i) -= s * std::conj(v[i]);
        }
    }

    if (positive_diag) {
        for (int i = 0; i < n; ++i) {
            Complex d = r(i, i);
            double ad = std::abs(d);
            Complex ph = (ad > 0) ? d / ad : Complex(1, 0);
            Complex phc = std::conj(ph);
            for (int col = i; col < n; ++col) r(i, col) *= phc;
            for (int row = 0; row < m; ++row) q(row, i) *= ph;
        }
    }

    QRFactors out;
    out.q = ComplexMatrix(m, n);
    out.r = ComplexMatrix(n, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.q(i, j) = q(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.r(i, j) = r(i, j);
    return out;
}

LUFactors::LUFactors(const ComplexMatrix& a) : lu_(a), n_(a.rows()), singular_(false) {
    if (a.rows() != a.cols()) throw DimOutOfRange("LU needs a square matrix");
    det_ = Complex(1, 0);
    for (int i = 0; i < n_; ++i) perm_[i] = i;

    for (int k = 0; k < n_; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n_; ++i) {
            double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv != k) {
            for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            det_ = -det_;
        }
        Complex pivot = lu_(k, k);
        det_ *= pivot;
        if (std::abs(pivot) < 1e-300) {
            singular_ = true;
            continue;
        }
        for (int i = k + 1; i < n_; ++i) {
            Complex f = lu_(i, k) / pivot;
            lu_(i, k) = f;
            for (int j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

ComplexVector LUFactors::solve(const ComplexVector& b) const {
    if (singular_) throw Singular("solve on a singular factorization");
    ComplexVector y(n_);
    for (int i = 0; i < n_; ++i) {
        Complex s = b[perm_[i]];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
        y[i] = s;
    }
    ComplexVector x(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        Complex s = y[i];
        for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Complex det(const ComplexMatrix& a) { return LUFactors(a).det(); }

double det(const RealMatrix& a) { return LUFactors(to_complex(a)).det().real(); }

ComplexMatrix inverse(const ComplexMatrix& a) {
    LUFactors f(a);
    if (f.singular()) throw Singular("inverse of a singular matrix");
    const int n = a.rows();
    ComplexMatrix out(n, n);
    for (int j = 0; j < n; ++j) {
        ComplexVector e(n);
        e[j] = Complex(1, 0);
        ComplexVector x = f.solve(e);
        out.set_column(j, x);
    }
    return out;
}

std::vector<double> svd_singular_values(const ComplexMatrix& a) {
    const int m = a.rows();
    const int n = a.cols();
    ComplexMatrix b = a;

    const int max_sweeps = 60;
    const double tol = 1e-14;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double alpha = 0, beta = 0;
                Complex gamma{};
                for (int k = 0; k < m; ++k) {
                    alpha += std::norm(b(k, i));
                    beta += std::norm(b(k, j));
                    gamma += std::conj(b(k, i)) * b(k, j);
                }
                double ag = std::abs(gamma);
                if (ag <= tol * std::sqrt(alpha * beta) || ag == 0.0) continue;
                converged = false;

                // Phase column j so the off-diagonal Gram entry is real, then
                // apply the classical real Jacobi rotation to the pair.
                Complex ph = gamma / ag;
                double tau = (beta - alpha) / (2.0 * ag);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int k = 0; k < m; ++k) {
                    Complex u = b(k, i);
                    Complex v = std::conj(ph) * b(k, j);
                    b(k, i) = c * u - s * v;
                    b(k, j) = s * u + c * v;
                }
            }
        }
    }
    if (!converged) throw NoConvergence("singular value Jacobi sweeps exhausted");

    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < m; ++k) s += std::norm(b(k, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double gram_det(const ComplexMatrix& a, const ComplexMatrix& u_k) {
    const int d = a.rows();
    const int k = u_k.cols();
    if (u_k.rows() != d || k > d) throw DimOutOfRange("frame shape mismatch");

    ComplexMatrix gram = adjoint(u_k) * u_k;
    ComplexMatrix eye = ComplexMatrix::identity(k);
    if ((gram - eye).max_abs() > 1e-10)
        throw NotOrthonormal("frame columns deviate from orthonormality");

    ComplexMatrix mapped = a * u_k;
    QRFactors f = qr_decompose(mapped, true);
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= std::abs(f.r(i, i));
    return p;
}

}  // namespace dsm
