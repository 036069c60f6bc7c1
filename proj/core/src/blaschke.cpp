#include "dsm/blaschke.hpp"

#include <cmath>
#include <numbers>

#include "dsm/errors.hpp"
#include "dsm/parallel.hpp"

namespace dsm {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double t) {
    // into [0, 2 pi)
    t = std::fmod(t, 2 * kPi);
    if (t < 0) t += 2 * kPi;
    return t;
}

Complex unit(double t) { return Complex(std::cos(t), std::sin(t)); }

}  // namespace

Complex BlaschkeFactor::eval(Complex z) const {
    return unit(theta) * (z - c) / (1.0 - std::conj(c) * z);
}

Complex BlaschkeFactor::derivative(Complex z) const {
    Complex den = 1.0 - std::conj(c) * z;
    return unit(theta) * (1.0 - std::norm(c)) / (den * den);
}

Complex BlaschkeProduct::eval(Complex z) const {
    Complex w = unit(theta);
    for (Complex zk : zeros) {
        w *= (z - zk) / (1.0 - std::conj(zk) * z);
    }
    return w;
}

BlaschkeFactor cayley_blaschke(double a, double theta) {
    if (!(a > 0)) throw BadParameter("cayley_blaschke needs a > 0");
    if (a == 1.0) throw BadParameter("cayley_blaschke needs a != 1");
    BlaschkeFactor b;
    b.theta = wrap_angle(-2.0 * theta);
    b.c = Complex(-std::tanh(std::log(a)), 0.0);
    return b;
}

namespace {

FixedPointResult iterate_from_zero(const BlaschkeProduct& b, int n_iter) {
    FixedPointResult r;
    Complex z = 0.0;
    double step = 1.0;
    for (int i = 0; i < n_iter; ++i) {
        Complex zn = b.eval(z);
        step = std::abs(zn - z);
        z = zn;
        r.iterations = i + 1;
        if (step < 1e-14 && i > 2) break;
    }
    r.alpha = z;
    r.residual = std::abs(b.eval(z) - z);
    r.converged = step < 1e-10 && r.residual < 1e-8;
    return r;
}

}  // namespace

FixedPointResult physical_fixed_point(const BlaschkeFactor& b, int n_iter) {
    const Complex ph = unit(b.theta);
    if (std::abs(b.c) < 1e-300) {
        // Pure rotation: 0 is the fixed point (every point, if theta = 0).
        FixedPointResult r;
        r.alpha = 0.0;
        r.converged = true;
        r.residual = 0.0;
        return r;
    }

    // Fixed points solve conj(c) z^2 + (e^{i theta} - 1) z - e^{i theta} c = 0.
    // The product of the roots has modulus 1, so either one root lies inside
    // the disk (elliptic, with its reflection outside) or both sit on the
    // boundary (hyperbolic or parabolic).
    const Complex qa = std::conj(b.c);
    const Complex qb = ph - 1.0;
    const Complex qc = -ph * b.c;
    const Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    // Stable quadratic: take the root pair via the larger-magnitude numerator.
    Complex q = (std::real(std::conj(qb) * disc) >= 0) ? -0.5 * (qb + disc)
                                                       : -0.5 * (qb - disc);
    Complex r1, r2;
    if (std::abs(q) > 0) {
        r1 = q / qa;
        r2 = qc / q;
    } else {
        r1 = std::sqrt(qc / qa);
        r2 = -r1;
    }

    auto deriv_mod = [&](Complex z) { return std::abs(b.derivative(z)); };
    Complex root;
    const double m1 = std::abs(r1);
    const double m2 = std::abs(r2);
    if (m1 < 1.0 - 1e-12 || m2 < 1.0 - 1e-12) {
        // Interior fixed point: rotation about it, iteration will not settle.
        root = (m1 < m2) ? r1 : r2;
        FixedPointResult r;
        r.alpha = root;
        r.converged = false;
        r.residual = std::abs(b.eval(root) - root);
        return r;
    }
    // Boundary pair: the attracting end has |B'| <= 1.
    root = (deriv_mod(r1) <= deriv_mod(r2)) ? r1 : r2;
    root /= std::abs(root);

    FixedPointResult it = iterate_from_zero(BlaschkeProduct::from_factor(b), n_iter);
    if (it.converged && std::abs(it.alpha - root) < 1e-6) {
        it.alpha = root;  // quadratic root is the sharper value
        it.residual = std::abs(b.eval(root) - root);
        return it;
    }
    FixedPointResult r;
    r.alpha = root;
    r.converged = it.converged;
    r.iterations = it.iterations;
    r.residual = std::abs(b.eval(root) - root);
    return r;
}

FixedPointResult physical_fixed_point(const BlaschkeProduct& b, int n_iter) {
    if (b.degree() == 1) {
        BlaschkeFactor f{b.theta, b.zeros[0]};
        return physical_fixed_point(f, n_iter);
    }
    return iterate_from_zero(b, n_iter);
}

DensityTable theta_average_pushforward(const BlaschkeProduct& b, int n_iter,
                                       int grid_size, int theta_samples,
                                       int bins, int workers) {
    if (grid_size <= 0 || theta_samples <= 0 || bins <= 0 || n_iter < 0)
        throw BadParameter("theta_average_pushforward needs positive sizes");

    const std::uint64_t total =
        static_cast<std::uint64_t>(grid_size) * static_cast<std::uint64_t>(theta_samples);
    const std::uint64_t base = total / kParallelBlocks;
    const std::uint64_t extra = total % kParallelBlocks;

    using Counts = std::vector<std::uint64_t>;
    auto states = run_blocks<Counts>(
        total, 0, workers,
        [&](Counts& st, RngStream&, std::uint64_t count, int k) {
            st.assign(static_cast<size_t>(bins), 0);
            std::uint64_t offset = static_cast<std::uint64_t>(k) * base +
                                   std::min<std::uint64_t>(k, extra);
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::uint64_t idx = offset + i;
                const int t = static_cast<int>(idx / static_cast<std::uint64_t>(grid_size));
                const int j = static_cast<int>(idx % static_cast<std::uint64_t>(grid_size));
                // Each grid point carries its own golden-ratio offset into the
                // theta lattice. After enough contracting steps the landing
                // point forgets z, and a theta grid shared by every z would
                // leave the same quadrature error in each term of the grid
                // average; the offsets make the union of lattices dense.
                const double u = std::fmod((j + 1) * 0.6180339887498949, 1.0);
                const double th = 2 * kPi * (t + u) / theta_samples;
                const Complex rot = unit(th);
                Complex z = unit(2 * kPi * (j + 0.5) / grid_size);
                for (int s = 0; s < n_iter; ++s) {
                    z = rot * b.eval(z);
                    double m = std::abs(z);
                    if (m > 0) z /= m;  // the map preserves |z| = 1; kill drift
                }
                double ang = std::arg(z);
                if (ang < 0) ang += 2 * kPi;
                int bin = static_cast<int>(ang / (2 * kPi) * bins);
                if (bin >= bins) bin = bins - 1;
                ++st[static_cast<size_t>(bin)];
            }
        });

    DensityTable table;
    table.values.assign(static_cast<size_t>(bins), 0.0);
    table.total_mass = 1.0;
    for (const auto& st : states) {
        if (st.empty()) continue;
        for (int i = 0; i < bins; ++i)
            table.values[static_cast<size_t>(i)] += static_cast<double>(st[static_cast<size_t>(i)]);
    }
    const double scale = static_cast<double>(bins) / static_cast<double>(total);
    for (double& v : table.values) v *= scale;
    return table;
}

}  // namespace dsm
