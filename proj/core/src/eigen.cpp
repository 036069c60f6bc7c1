#include "dsm/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsm/linalg.hpp"

namespace dsm {

namespace {

// Unitary similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(ComplexMatrix& h) {
    const int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        double xnorm = 0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;

        Complex x0 = h(k + 1, k);
        Complex phase = (std::abs(x0) > 0) ? x0 / std::abs(x0) : Complex(1, 0);
        Complex alpha = -phase * xnorm;

        ComplexVector v(n);
        for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= alpha;
        double vnorm2 = 0;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;

        for (int col = k; col < n; ++col) {
            Complex s{};
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, col);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) h(i, col) -= s * v[i];
        }
        for (int row = 0; row < n; ++row) {
            Complex s{};
            for (int i = k + 1; i < n; ++i) s += h(row, i) * v[i];
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) h(row, i) -= s * std::conj(v[i]);
        }
    }
}

// Eigenvalue of the trailing 2x2 of the active block closest to its last
// diagonal entry (Wilkinson's shift, complex arithmetic throughout).
Complex wilkinson_shift(const ComplexMatrix& h, int hi) {
    Complex a = h(hi - 1, hi - 1);
    Complex b = h(hi - 1, hi);
    Complex c = h(hi, hi - 1);
    Complex d = h(hi, hi);
    Complex tr2 = (a + d) * 0.5;
    Complex disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    Complex m1 = tr2 + disc;
    Complex m2 = tr2 - disc;
    return (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
}

void givens_pair(Complex a, Complex b, double& c, Complex& s) {
    double ab = std::abs(b);
    if (ab == 0.0) {
        c = 1.0;
        s = Complex(0, 0);
        return;
    }
    double aa = std::abs(a);
    double r = std::hypot(aa, ab);
    c = aa / r;
    Complex pha = (aa > 0) ? a / aa : Complex(1, 0);
    s = pha * std::conj(b) / r;
}

// One explicitly shifted QR sweep on the Hessenberg block h[lo..hi, lo..hi].
void qr_sweep(ComplexMatrix& h, int lo, int hi, Complex mu) {
    const int b = hi - lo + 1;
    if (b < 2) return;
    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;

    double cs[kMaxDim];
    Complex sn[kMaxDim];
    for (int i = lo; i < hi; ++i) {
        double c;
        Complex s;
        givens_pair(h(i, i), h(i + 1, i), c, s);
        cs[i - lo] = c;
        sn[i - lo] = s;
        for (int col = i; col <= hi; ++col) {
            Complex t1 = h(i, col);
            Complex t2 = h(i + 1, col);
            h(i, col) = c * t1 + s * t2;
            h(i + 1, col) = -std::conj(s) * t1 + c * t2;
        }
    }
    for (int i = lo; i < hi; ++i) {
        double c = cs[i - lo];
        Complex s = sn[i - lo];
        // Column i of the triangular factor carries entries in every row of
        // the block down to i, so the rotation must run from lo, not i - 1.
        for (int row = lo; row <= i + 1; ++row) {
            Complex t1 = h(row, i);
            Complex t2 = h(row, i + 1);
            h(row, i) = c * t1 + std::conj(s) * t2;
            h(row, i + 1) = -s * t1 + c * t2;
        }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
}

std::vector<Complex> hessenberg_eigenvalues(ComplexMatrix h) {
    const int n = h.rows();
    std::vector<Complex> values;
    values.reserve(n);

    int hi = n - 1;
    int stagnation = 0;
    int budget = 60 * n;
    while (hi >= 0) {
        if (hi == 0) {
            values.push_back(h(0, 0));
            break;
        }
        // Zero negligible subdiagonals, then peel off converged eigenvalues.
        for (int i = 1; i <= hi; ++i) {
            double small = 1e-16 * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
            if (std::abs(h(i, i - 1)) <= small) h(i, i - 1) = Complex(0, 0);
        }
        if (h(hi, hi - 1) == Complex(0, 0)) {
            values.push_back(h(hi, hi));
            --hi;
            stagnation = 0;
            continue;
        }

        int lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex(0, 0)) --lo;

        if (--budget < 0) throw NoConvergence("QR iteration budget exhausted");
        ++stagnation;
        Complex mu = wilkinson_shift(h, hi);
        if (stagnation > 0 && stagnation % 12 == 0) {
            // Exceptional shift to break rare limit cycles.
            mu = h(hi, hi) + Complex(1.5 * std::abs(h(hi, hi - 1)), 0);
        }
        qr_sweep(h, lo, hi, mu);
    }
    return values;
}

ComplexVector start_vector(int n, int which) {
    ComplexVector v(n);
    for (int j = 0; j < n; ++j) {
        double t = 0.7548776662 * (j + 1) * (which + 2);
        v[j] = Complex(std::cos(6.2831853071795865 * t),
                       std::sin(6.2831853071795865 * t));
    }
    double nv = v.norm();
    for (int j = 0; j < n; ++j) v[j] /= nv;
    return v;
}

void canonical_phase(ComplexVector& v) {
    int best = 0;
    double bm = 0;
    for (int j = 0; j < v.size(); ++j) {
        double m = std::abs(v[j]);
        if (m > bm * (1.0 + 1e-12)) {
            bm = m;
            best = j;
        }
    }
    Complex z = v[best];
    if (std::abs(z) == 0.0) return;
    Complex ph = std::conj(z) / std::abs(z);
    for (int j = 0; j < v.size(); ++j) v[j] *= ph;
}

}  // namespace

std::vector<Complex> eigenvalues_by_modulus(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimOutOfRange("eigenvalues need a square matrix");
    if (!a.finite()) throw BadParameter("matrix entries must be finite");
    const int n = a.rows();
    ComplexMatrix h = a;
    hessenberg_reduce(h);
    std::vector<Complex> values = hessenberg_eigenvalues(h);
    if (static_cast<int>(values.size()) != n)
        throw NoConvergence("eigenvalue count mismatch after deflation");
    std::sort(values.begin(), values.end(),
              [](const Complex& x, const Complex& y) { return std::abs(x) > std::abs(y); });
    return values;
}

EigenSystem eigen_by_modulus(const ComplexMatrix& a, double tie_tol) {
    const int n = a.rows();
    const double scale = a.frobenius_norm();
    {
        double dv = std::abs(det(a));
        if (dv <= 1e-12 * std::pow(scale, n))
            throw Singular("matrix is numerically singular");
    }

    std::vector<Complex> values = eigenvalues_by_modulus(a);
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(std::abs(values[i]) - std::abs(values[i + 1])) < tie_tol * scale)
            throw ModulusTie("adjacent eigenvalue moduli within tie tolerance");
    }

    EigenSystem sys;
    sys.values = values;
    sys.vectors.resize(n);
    sys.residuals.resize(n);

    for (int i = 0; i < n; ++i) {
        Complex lambda = values[i];
        ComplexVector v = start_vector(n, i);
        double res = 1e300;

        // Inverse iteration with the (nearly singular) shifted matrix; a tiny
        // complex nudge keeps the factorization usable when the shift is dead
        // on an eigenvalue. One Rayleigh refinement pass if needed.
        Complex shift = lambda;
        for (int attempt = 0; attempt < 3 && res > 1e-10 * scale; ++attempt) {
            ComplexMatrix b = a;
            Complex nudge = Complex(1.0, 0.7) * (1e-14 * scale * (attempt * attempt));
            for (int j = 0; j < n; ++j) b(j, j) -= shift + nudge;
            LUFactors f(b);
            if (f.singular()) {
                shift += Complex(1e-12, 3e-13) * scale;
                continue;
            }
            for (int it = 0; it < 4; ++it) {
                ComplexVector x = f.solve(v);
                double nx = x.norm();
                if (!(nx > 0) || !std::isfinite(nx)) break;
                for (int j = 0; j < n; ++j) x[j] /= nx;
                v = x;
                ComplexVector av = a * v;
                Complex rq{};
                for (int j = 0; j < n; ++j) rq += std::conj(v[j]) * av[j];
                double r = 0;
                for (int j = 0; j < n; ++j) r += std::norm(av[j] - rq * v[j]);
                r = std::sqrt(r);
                if (r < res) {
                    res = r;
                    lambda = rq;
                }
                if (res <= 1e-12 * scale) break;
            }
            shift = lambda;
        }

        if (res > 1e-8 * scale)
            throw NoConvergence("eigenvector residual above tolerance");
        canonical_phase(v);
        sys.values[i] = lambda;
        sys.vectors[i] = v;
        sys.residuals[i] = res;
    }

    // Rayleigh refinement can move values by ~1e-13 * scale, far below the
    // tie tolerance, so the modulus order cannot have flipped. Re-sort to be
    // safe and re-check strictness on the refined values.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) {
        return std::abs(sys.values[x]) > std::abs(sys.values[y]);
    });
    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n);
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = sys.values[idx[i]];
        out.vectors[i] = sys.vectors[idx[i]];
        out.residuals[i] = sys.residuals[idx[i]];
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(std::abs(out.values[i]) - std::abs(out.values[i + 1])) <
            tie_tol * scale)
            throw ModulusTie("adjacent eigenvalue moduli within tie tolerance");
    }
    return out;
}

}  // namespace dsm
