#include <cmath>
#include <complex>

#include "doctest.h"
#include "dsm/blaschke.hpp"
#include "dsm/gl2r.hpp"
#include "dsm/rng.hpp"

using dsm::BlaschkeFactor;
using dsm::BlaschkeProduct;
using dsm::Complex;
using dsm::RealMatrix;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

RealMatrix rot_scale(double theta, double a) {
    double c = std::cos(theta), s = std::sin(theta);
    return RealMatrix(2, 2, {c * a, -s / a, s * a, c / a});
}

// Chart taking the projective angle to the unit circle, z = e^{-2 i omega}.
Complex chart(double omega) {
    return Complex(std::cos(-2 * omega), std::sin(-2 * omega));
}

}  // namespace

TEST_CASE("disk factors preserve the circle and the disk") {
    dsm::RngStream rng(71);
    for (int t = 0; t < 50; ++t) {
        double r = rng.uniform(0.0, 0.95);
        double arg = rng.uniform(0.0, 2 * kPi);
        BlaschkeFactor b{rng.uniform(0.0, 2 * kPi),
                         Complex(r * std::cos(arg), r * std::sin(arg))};
        Complex on = b.eval(chart(rng.uniform(-kPi / 2, kPi / 2)));
        CHECK(std::abs(std::abs(on) - 1) < 1e-12);
        Complex in = b.eval(Complex(0.4 * rng.normal() / 3, 0.4 * rng.normal() / 3));
        CHECK(std::abs(in) < 1.0);
    }
}

TEST_CASE("factor derivative matches finite differences") {
    BlaschkeFactor b{0.7, Complex(0.3, -0.2)};
    for (Complex z : {Complex(0.2, 0.1), Complex(-0.5, 0.3), Complex(0.0, 0.0)}) {
        const double h = 1e-6;
        Complex fd = (b.eval(z + Complex(h, 0)) - b.eval(z - Complex(h, 0))) / (2 * h);
        CHECK(std::abs(b.derivative(z) - fd) < 1e-8);
    }
}

TEST_CASE("disk conjugacy reproduces the projective rotation-scale action") {
    dsm::RngStream rng(72);
    for (int t = 0; t < 40; ++t) {
        double theta = rng.uniform(0.1, 3.0);
        double a = rng.uniform(1.2, 4.0);
        BlaschkeFactor b = dsm::cayley_blaschke(a, theta);
        CHECK(std::abs(b.c) < 1.0);
        CHECK(b.theta >= 0.0);
        CHECK(b.theta < 2 * kPi);
        RealMatrix m = rot_scale(theta, a);
        for (int s = 0; s < 10; ++s) {
            double w = rng.uniform(-kPi / 2, kPi / 2);
            dsm::ProjPoint img = dsm::mobius_act(m, dsm::ProjPoint::from_angle(w));
            CHECK(std::abs(b.eval(chart(w)) - chart(img.angle)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(dsm::cayley_blaschke(1.0, 0.3), dsm::BadParameter);
    CHECK_THROWS_AS(dsm::cayley_blaschke(-2.0, 0.3), dsm::BadParameter);
}

TEST_CASE("degree one fixed point satisfies its equation and is attracting") {
    dsm::RngStream rng(73);
    int interior = 0, boundary = 0;
    for (int t = 0; t < 60; ++t) {
        double theta = rng.uniform(0.0, 2 * kPi);
        double a = rng.uniform(1.05, 5.0);
        BlaschkeFactor b = dsm::cayley_blaschke(a, theta);
        dsm::FixedPointResult fp = dsm::physical_fixed_point(b, 4000);
        CHECK(std::abs(b.eval(fp.alpha) - fp.alpha) < 1e-7);
        if (fp.converged) {
            ++boundary;
            CHECK(std::abs(std::abs(fp.alpha) - 1) < 1e-9);
            CHECK(std::abs(b.derivative(fp.alpha)) <= 1.0 + 1e-9);
        } else {
            ++interior;
            CHECK(std::abs(fp.alpha) < 1.0);
        }
    }
    // mixed matrix draws must produce both dynamical regimes
    CHECK(interior > 0);
    CHECK(boundary > 0);
}

TEST_CASE("rotation factor fixes the origin") {
    // Iterates of 0 are all 0 for a pure rotation, so the limit is exact.
    BlaschkeFactor b{1.1, Complex(0.0, 0.0)};
    dsm::FixedPointResult fp = dsm::physical_fixed_point(b, 100);
    CHECK(fp.converged);
    CHECK(fp.residual == 0);
    CHECK(std::abs(fp.alpha) < 1e-12);
}

TEST_CASE("interior fixed point agrees with the invariant density descriptor") {
    RealMatrix m = rot_scale(1.0, 2.0);
    dsm::AcipDescriptor acip = dsm::acip_from_matrix(m);
    BlaschkeFactor b = dsm::cayley_blaschke(2.0, 1.0);
    dsm::FixedPointResult fp = dsm::physical_fixed_point(b, 4000);
    REQUIRE_FALSE(fp.converged);  // elliptic regime
    CHECK(std::abs(fp.alpha - acip.alpha()) < 1e-8);
    CHECK(std::abs(b.eval(fp.alpha) - fp.alpha) < 1e-12);
}

TEST_CASE("degree two products iterate to a boundary attractor") {
    BlaschkeProduct b{0.2, {Complex(0.5, 0.0), Complex(0.0, -0.3)}};
    CHECK(b.degree() == 2);
    Complex on = b.eval(Complex(std::cos(0.9), std::sin(0.9)));
    CHECK(std::abs(std::abs(on) - 1) < 1e-12);

    dsm::FixedPointResult fp = dsm::physical_fixed_point(b, 20000);
    if (fp.converged) {
        CHECK(std::abs(b.eval(fp.alpha) - fp.alpha) < 1e-6);
    }
    CHECK(std::abs(fp.alpha) <= 1.0 + 1e-9);
}

TEST_CASE("rotation averaged pushforward is close to flat and normalized") {
    BlaschkeProduct b = BlaschkeProduct::from_factor(dsm::cayley_blaschke(2.0, 0.0));
    dsm::DensityTable t = dsm::theta_average_pushforward(b, 15, 20000, 200, 50, 1);
    REQUIRE(t.bins() == 50);
    CHECK(t.integral() == doctest::Approx(1).epsilon(1e-12));
    double sup = 0;
    for (double v : t.values) sup = std::max(sup, std::abs(v - 1.0));
    CHECK(sup < 0.3);  // coarse budget; the tight bound runs with the full budgets
}

TEST_CASE("pushforward is reproducible across worker counts") {
    BlaschkeProduct b = BlaschkeProduct::from_factor(dsm::cayley_blaschke(3.0, 0.4));
    dsm::DensityTable w1 = dsm::theta_average_pushforward(b, 8, 5000, 64, 40, 1);
    dsm::DensityTable w4 = dsm::theta_average_pushforward(b, 8, 5000, 64, 40, 4);
    REQUIRE(w1.values.size() == w4.values.size());
    for (std::size_t i = 0; i < w1.values.size(); ++i)
        CHECK(w1.values[i] == w4.values[i]);
}
