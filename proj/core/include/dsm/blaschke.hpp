#pragma once

#include <vector>

#include "dsm/matrix.hpp"
#include "dsm/stats.hpp"

namespace dsm {

// Disk automorphism z -> e^{i theta} (z - c) / (1 - conj(c) z), |c| < 1.
struct BlaschkeFactor {
    double theta = 0;
    Complex c{};

    Complex eval(Complex z) const;
    Complex derivative(Complex z) const;
};

// Finite product e^{i theta} prod_k (z - z_k) / (1 - conj(z_k) z).
struct BlaschkeProduct {
    double theta = 0;
    std::vector<Complex> zeros;

    int degree() const { return static_cast<int>(zeros.size()); }
    Complex eval(Complex z) const;

    static BlaschkeProduct from_factor(const BlaschkeFactor& b) {
        return BlaschkeProduct{b.theta, {b.c}};
    }
};

// Disk model of the projective action of R_theta * diag(a, 1/a), a != 1,
// conjugated through the Cayley map C(z) = (z - i)/(z + i) applied to the
// anti-slope coordinate. In disk coordinates the rotation angle doubles and
// reverses sign, so the factor carries phase -2 theta and zero tanh(ln a).
BlaschkeFactor cayley_blaschke(double a, double theta);

struct FixedPointResult {
    Complex alpha{};
    bool converged = false;
    double residual = 0;
    int iterations = 0;
};

// Attractor of the factor, as the limit of iterates of 0. Degree one admits
// a closed form: the fixed point equation is a quadratic with one root in
// the closed disk; iteration serves as the cross-check. When iteration does
// not settle (elliptic rotation about an interior fixed point), converged is
// false and the quadratic root is returned.
FixedPointResult physical_fixed_point(const BlaschkeFactor& b, int n_iter);

// Degree >= 2 has no closed form; iterate 0 and report convergence.
FixedPointResult physical_fixed_point(const BlaschkeProduct& b, int n_iter);

// Pushes a uniform circle grid through n_iter steps of z -> e^{i theta} B(z)
// over a lattice of theta samples, bins the landing angles, and averages.
// Each grid point uses its own golden-ratio offset into the theta lattice,
// which keeps the average convergent even where the iteration contracts all
// of the grid onto a single theta-dependent atom. The rotation average of
// the pushforwards is the uniform measure, so the binned density should be
// flat.
DensityTable theta_average_pushforward(const BlaschkeProduct& b, int n_iter,
                                       int grid_size, int theta_samples,
                                       int bins = 100, int workers = 1);

}  // namespace dsm
