#pragma once

#include <cstdint>
#include <utility>

#include "dsm/matrix.hpp"
#include "dsm/measure.hpp"
#include "dsm/stats.hpp"
#include "dsm/verify.hpp"

namespace dsm {

// Point of the real projective line in two charts kept consistent: the angle
// omega in [-pi/2, pi/2) of a direction (cos omega, sin omega), and the
// anti-slope s = x / y = cot omega (s is +inf at omega = 0).
struct ProjPoint {
    double angle = 0;
    double antislope = 0;

    static ProjPoint from_angle(double omega);
    static ProjPoint from_antislope(double s);
    static ProjPoint from_vector(double x, double y);
};

enum class ConjugacyClass { Elliptic, Parabolic, Hyperbolic };

// Classifies the projective action of an invertible real 2x2 matrix after
// normalizing to unit |determinant|. Negative determinant forces real
// eigenvalues, hence Hyperbolic.
ConjugacyClass classify(const RealMatrix& b);

// Projective (Moebius) action of b on a point, computed on homogeneous
// coordinates so the anti-slope pole needs no special case.
ProjPoint mobius_act(const RealMatrix& b, const ProjPoint& p);

// Density of the rotation-invariant measure on the projective line in the
// anti-slope chart: the standard Cauchy density 1 / (pi (1 + s^2)).
double cauchy_antislope_density(double s);

// Absolutely continuous invariant measure of an elliptic projective action,
// described by the interior fixed point alpha of the conjugated disk map.
// On the circle the density against normalized arc length is the Poisson
// kernel P(alpha, z); in the angle chart of the projective line the chart
// map is z = e^{-2 i omega}, giving density P(alpha, e^{-2 i omega}) / pi,
// renormalized numerically.
class AcipDescriptor {
public:
    explicit AcipDescriptor(Complex alpha);

    Complex alpha() const { return alpha_; }
    // Poisson kernel (1 - |alpha|^2) / |z - alpha|^2; integrates to 1
    // against d phi / (2 pi) on the unit circle.
    double density_circle(Complex z) const;
    // Density in omega on [-pi/2, pi/2), integrating to 1.
    double density_angle(double omega) const;
    // Raw quadrature value of the angle-density integral before the
    // numerical renormalization; equals 1 up to quadrature error.
    double normalization() const { return norm_; }

private:
    Complex alpha_{};
    double norm_ = 1;
};

// Extracts the acip for an elliptic matrix (determinant positive, normalized
// trace below 2). Throws BadParameter for the other conjugacy classes.
AcipDescriptor acip_from_matrix(const RealMatrix& a);

// Eigenvalues of R_theta diag(a, -1/a) as a function of its trace t: the
// roots of x^2 - t x - 1, a reciprocal pair with product -1.
std::pair<double, double> negdet_eigenvalues(double t);

// Spectral radius (largest eigenvalue modulus) of a real 2x2 matrix.
double spectral_radius_2x2(const RealMatrix& m);

// Distribution of the trace t = (a - 1/a) cos theta of R_theta diag(a, -1/a)
// over uniform theta, for a in (0,1). The usable CDF is
// 1 - arccos(t / (1/a - a)) / pi; decreasing_variant selects the mirrored
// form arccos(t / (1/a - a)) / pi kept for comparison. Support |t| <= 1/a - a.
double negdet_trace_cdf(double a, double t, bool decreasing_variant = false);

// CDF of the spectral radius rho of R_theta diag(a, -1/a), supported on
// [1, 1/a]; evaluates to 0 below and 1 above the support.
double negdet_rho_cdf(double a, double rho);

// Density of the spectral radius, supported on [1, 1/a) with an integrable
// singularity at the right endpoint. Throws OutOfSupport outside.
double negdet_rho_density(double a, double rho);

// Samples theta uniform, builds the two-atom invariant measure of
// R_theta diag(a, -1/a), and compares the weighted empirical distribution of
// the atom angles against the uniform distribution on [-pi/2, pi/2).
// weighted = false replaces the eigenvalue-modulus weights by 1/2, 1/2; that
// control run is expected to fail the same threshold.
MCReport verify_ds_gl2r_negdet(double a, std::uint64_t n, std::uint64_t seed,
                               int workers = 0, bool weighted = true);

// Quadrature check of the average-growth identity: the theta-average of
// f(spectral radius of R_theta A) against the projective-line average of
// f(|A v|), both under uniform measures. Equality holds for det A > 0
// (pass iff |lhs - rhs| < 1e-3); for det A < 0 only the one-sided bound
// lhs >= rhs is asserted, and pass checks lhs >= rhs - 1e-3.
MCReport rho_norm_equality(const RealMatrix& a, MonotoneMap f,
                           int theta_samples = 10000, int v_samples = 10000);

}  // namespace dsm
