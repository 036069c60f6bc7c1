#include "dsm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsm/linalg.hpp"

namespace dsm {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_moduli(const std::vector<double>& m, bool strict) {
    if (m.size() < 2 || m.size() > kMaxDim)
        throw DimOutOfRange("moduli count outside [2, 8]");
    for (size_t i = 0; i < m.size(); ++i) {
        if (!(m[i] > 0) || !std::isfinite(m[i]))
            throw NotDescending("moduli must be positive finite");
        if (strict && i > 0 && !(m[i - 1] > m[i]))
            throw NotDescending("moduli must be strictly descending");
    }
}

double log_sum_exp(const std::vector<double>& logs) {
    double m = *std::max_element(logs.begin(), logs.end());
    double s = 0;
    for (double v : logs) s += std::exp(v - m);
    return m + std::log(s);
}

// log of S(m) = sum over permutations pi of prod_j m_j^(2 pi0(j)), pi0 zero
// based; equals the normalizer of ds_perm_weights by the rearrangement
// bijection.
double log_phase_sum(const std::vector<double>& m) {
    const int d = static_cast<int>(m.size());
    std::vector<double> logm(d);
    for (int j = 0; j < d; ++j) logm[j] = std::log(m[j]);
    std::vector<double> terms;
    for (const Permutation& pi : Permutation::all(d)) {
        double t = 0;
        for (int j = 0; j < d; ++j) t += 2.0 * pi.map[j] * logm[j];
        terms.push_back(t);
    }
    return log_sum_exp(terms);
}

}  // namespace

Permutation Permutation::identity(int d) {
    Permutation p;
    p.dim = d;
    for (int i = 0; i < d; ++i) p.map[i] = i;
    return p;
}

std::vector<Permutation> Permutation::all(int d) {
    Vector<int>::check_dim(d, 1);
    std::array<int, kMaxDim> idx{};
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::vector<Permutation> out;
    do {
        Permutation p;
        p.dim = d;
        p.map = idx;
        out.push_back(p);
    } while (std::next_permutation(idx.begin(), idx.begin() + d));
    return out;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.dim = dim;
    for (int i = 0; i < dim; ++i) p.map[map[i]] = i;
    return p;
}

int Permutation::lex_rank() const {
    int rank = 0;
    int fact = 1;
    for (int i = 2; i <= dim; ++i) fact *= i;
    for (int i = 0; i < dim; ++i) {
        fact /= (dim - i);
        int smaller = 0;
        for (int j = i + 1; j < dim; ++j)
            if (map[j] < map[i]) ++smaller;
        rank += smaller * fact;
    }
    return rank;
}

bool Permutation::operator==(const Permutation& o) const {
    if (dim != o.dim) return false;
    for (int i = 0; i < dim; ++i)
        if (map[i] != o.map[i]) return false;
    return true;
}

Flag::Flag(std::vector<ComplexVector> vs) : dim(static_cast<int>(vs.size())), vectors(std::move(vs)) {
    Vector<Complex>::check_dim(dim, 2);
    ComplexMatrix basis(dim, dim);
    for (int j = 0; j < dim; ++j) {
        if (std::abs(vectors[j].norm() - 1.0) > 1e-10)
            throw BadParameter("flag vectors must be unit norm");
        basis.set_column(j, vectors[j]);
    }
    if (std::abs(det(basis)) <= 1e-10)
        throw BadParameter("flag vectors are numerically dependent");
}

ComplexMatrix Flag::orthonormal_frame() const {
    ComplexMatrix basis(dim, dim);
    for (int j = 0; j < dim; ++j) basis.set_column(j, vectors[j]);
    return qr_decompose(basis, true).q;
}

PermWeights ds_perm_weights(const std::vector<double>& moduli) {
    check_moduli(moduli, true);
    const int d = static_cast<int>(moduli.size());
    std::vector<double> logm(d);
    for (int j = 0; j < d; ++j) logm[j] = std::log(moduli[j]);

    PermWeights pw;
    pw.dim = d;
    pw.perms = Permutation::all(d);
    std::vector<double> logs;
    logs.reserve(pw.perms.size());
    for (const Permutation& sigma : pw.perms) {
        double t = 0;
        for (int j = 0; j < d; ++j) t += 2.0 * (d - 1 - sigma.map[j]) * logm[j];
        logs.push_back(t);
    }
    double z = log_sum_exp(logs);
    pw.weights.resize(logs.size());
    for (size_t i = 0; i < logs.size(); ++i) pw.weights[i] = std::exp(logs[i] - z);
    return pw;
}

FlagMeasure ds_measure_flag(const ComplexMatrix& a, double tie_tol) {
    EigenSystem sys = eigen_by_modulus(a, tie_tol);
    const int d = a.rows();
    std::vector<double> moduli(d);
    for (int i = 0; i < d; ++i) moduli[i] = std::abs(sys.values[i]);

    PermWeights pw = ds_perm_weights(moduli);
    FlagMeasure m;
    for (const Permutation& tau : pw.perms) {
        std::vector<ComplexVector> vs(d);
        for (int j = 0; j < d; ++j) vs[j] = sys.vectors[tau.map[j]];
        m.points.emplace_back(std::move(vs));
        m.weights.push_back(pw.weight_of(tau.inverse()));
    }
    return m;
}

std::vector<double> ds_projected_cp_weights(const std::vector<double>& moduli) {
    PermWeights pw = ds_perm_weights(moduli);
    const int d = pw.dim;
    std::vector<double> p(d, 0.0);
    for (size_t k = 0; k < pw.perms.size(); ++k) {
        // sigma sends eigen index i to flag position sigma.map[i]; the atom
        // puts eigenvector i first when sigma.map[i] == 0.
        const Permutation& sigma = pw.perms[k];
        for (int i = 0; i < d; ++i) {
            if (sigma.map[i] == 0) {
                p[i] += pw.weights[k];
                break;
            }
        }
    }
    return p;
}

double torus_closed_form(const std::vector<double>& moduli, const Permutation& sigma) {
    check_moduli(moduli, true);
    const int d = static_cast<int>(moduli.size());
    if (sigma.dim != d) throw DimOutOfRange("permutation dimension mismatch");

    double log_den = 0;
    for (int j = 0; j < d; ++j)
        log_den += 2.0 * (d - 1 - j) * std::log(moduli[sigma.map[j]]);
    return std::exp(log_phase_sum(moduli) - log_den);
}

bool exponent_bijection_check(const std::vector<double>& moduli) {
    check_moduli(moduli, false);
    const int d = static_cast<int>(moduli.size());
    std::vector<double> logm(d);
    for (int j = 0; j < d; ++j) logm[j] = std::log(moduli[j]);

    std::vector<double> rising, falling;
    for (const Permutation& sigma : Permutation::all(d)) {
        double tr = 0, tf = 0;
        for (int j = 0; j < d; ++j) {
            tr += 2.0 * sigma.map[j] * logm[j];
            tf += 2.0 * (d - 1 - sigma.map[j]) * logm[j];
        }
        rising.push_back(tr);
        falling.push_back(tf);
    }
    return std::abs(log_sum_exp(rising) - log_sum_exp(falling)) <= 1e-10;
}

double projective_angle(double x, double y) {
    double a = std::atan2(y, x);
    if (a < -kPi / 2) a += kPi;
    if (a >= kPi / 2) a -= kPi;
    return a;
}

namespace {

// Real eigenpair of a 2x2 matrix for a known real eigenvalue.
RealVector eigenvector_2x2(const RealMatrix& a, double lambda) {
    double r1x = a(0, 0) - lambda, r1y = a(0, 1);
    double r2x = a(1, 0), r2y = a(1, 1) - lambda;
    RealVector v(2);
    if (r1x * r1x + r1y * r1y >= r2x * r2x + r2y * r2y) {
        v[0] = -r1y;
        v[1] = r1x;
    } else {
        v[0] = -r2y;
        v[1] = r2x;
    }
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1]);
    if (n == 0) {
        v[0] = 1;
        v[1] = 0;
        return v;
    }
    v[0] /= n;
    v[1] /= n;
    return v;
}

Complex stable_quadratic_root_in_disk(Complex qa, Complex qb, Complex qc) {
    if (std::abs(qa) < 1e-300) {
        if (std::abs(qb) < 1e-300) throw Singular("degenerate fixed point equation");
        return -qc / qb;
    }
    Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    if ((std::conj(qb) * disc).real() < 0) disc = -disc;
    Complex q = -(qb + disc) * 0.5;
    Complex r1 = q / qa;
    Complex r2 = (std::abs(q) > 0) ? qc / q : -qb / qa - r1;
    return (std::abs(r1) <= std::abs(r2)) ? r1 : r2;
}

}  // namespace

Gl2rMeasure ds_measure_gl2r(const RealMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw DimOutOfRange("expected a 2x2 matrix");
    double dd = det(a);
    double scale = a.frobenius_norm();
    if (std::abs(dd) <= 1e-12 * scale * scale) throw Singular("matrix is singular");

    double t = a(0, 0) + a(1, 1);
    Gl2rMeasure out;

    if (dd > 0) {
        double tr_norm = std::abs(t) / std::sqrt(dd);
        if (std::abs(tr_norm - 2.0) <= 1e-10)
            throw Parabolic("unit-determinant trace is 2; no formula applies");
        if (tr_norm > 2.0) {
            double disc = std::sqrt(t * t - 4.0 * dd);
            double l1 = (t + (t >= 0 ? disc : -disc)) / 2.0;  // larger modulus root
            RealVector v = eigenvector_2x2(a, l1);
            out.kind = Gl2Kind::HyperbolicAtom;
            out.atoms.points = {projective_angle(v[0], v[1])};
            out.atoms.weights = {1.0};
            return out;
        }
        // Elliptic: conjugate the Moebius action to the unit disk through the
        // Cayley map C = [[1, -i], [1, i]] and take the interior fixed point.
        ComplexMatrix c(2, 2, {Complex(1, 0), Complex(0, -1), Complex(1, 0), Complex(0, 1)});
        ComplexMatrix cinv(2, 2, {Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0.5), Complex(0, -0.5)});
        ComplexMatrix m = c * to_complex(a) * cinv;
        Complex qa = m(1, 0);
        Complex qb = m(1, 1) - m(0, 0);
        Complex qc = -m(0, 1);
        Complex alpha = stable_quadratic_root_in_disk(qa, qb, qc);
        if (std::abs(alpha) >= 1.0) {
            // The other root; elliptic maps have exactly one inside.
            Complex beta = (std::abs(qa) > 1e-300) ? (qc / qa) / alpha : alpha;
            alpha = beta;
        }
        out.kind = Gl2Kind::EllipticAcip;
        out.acip_alpha = alpha;
        return out;
    }

    // Negative determinant: two real eigenvalues of opposite sign, weights
    // proportional to eigenvalue modulus.
    double disc = std::sqrt(t * t - 4.0 * dd);
    double lp = (t + disc) / 2.0;
    double lm = (t - disc) / 2.0;
    double mp = std::abs(lp), mm = std::abs(lm);
    double l1 = (mp >= mm) ? lp : lm;
    double l2 = (mp >= mm) ? lm : lp;
    RealVector v1 = eigenvector_2x2(a, l1);
    RealVector v2 = eigenvector_2x2(a, l2);
    double w1 = std::abs(l1) / (std::abs(l1) + std::abs(l2));
    out.kind = Gl2Kind::NegDetAtoms;
    out.atoms.points = {projective_angle(v1[0], v1[1]), projective_angle(v2[0], v2[1])};
    out.atoms.weights = {w1, 1.0 - w1};
    return out;
}

}  // namespace dsm
