#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "dsm/eigen.hpp"
#include "dsm/measure.hpp"
#include "dsm/rng.hpp"
#include "oracles.hpp"

using dsm::Complex;
using dsm::ComplexMatrix;
using dsm::ComplexVector;
using dsm::Permutation;
using dsm::RealMatrix;

namespace {

std::vector<double> random_descending_moduli(int d, dsm::RngStream& rng) {
    std::vector<double> m(d);
    double v = rng.uniform(2.0, 4.0);
    for (int i = 0; i < d; ++i) {
        m[i] = v;
        v /= rng.uniform(1.3, 2.5);  // non-constant ratios
    }
    return m;
}

}  // namespace

TEST_CASE("permutation enumeration is lexicographic and rank-consistent") {
    for (int d = 2; d <= 5; ++d) {
        std::vector<Permutation> all = Permutation::all(d);
        int fact = 1;
        for (int i = 2; i <= d; ++i) fact *= i;
        REQUIRE(static_cast<int>(all.size()) == fact);
        for (int i = 0; i < fact; ++i) {
            CHECK(all[i].lex_rank() == i);
            // inverse composes to the identity
            Permutation inv = all[i].inverse();
            for (int j = 0; j < d; ++j) CHECK(inv.map[all[i].map[j]] == j);
        }
        for (int i = 1; i < fact; ++i) {
            // strictly increasing lexicographic order
            bool less = false;
            for (int j = 0; j < d; ++j) {
                if (all[i - 1].map[j] != all[i].map[j]) {
                    less = all[i - 1].map[j] < all[i].map[j];
                    break;
                }
            }
            CHECK(less);
        }
    }
}

TEST_CASE("dim-2 weights have the exact closed form") {
    dsm::PermWeights w = dsm::ds_perm_weights({2.0, 1.0});
    REQUIRE(w.weights.size() == 2);
    CHECK(w.weights[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(w.weights[1] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("weights match brute-force enumeration") {
    dsm::RngStream rng(31);
    for (int d = 2; d <= 6; ++d) {
        for (int t = 0; t < 5; ++t) {
            std::vector<double> m = random_descending_moduli(d, rng);
            dsm::PermWeights w = dsm::ds_perm_weights(m);
            std::vector<double> ref = oracle::perm_weights_brute(m);
            REQUIRE(w.weights.size() == ref.size());
            double total = 0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                CHECK(w.weights[i] == doctest::Approx(ref[i]).epsilon(1e-11));
                CHECK(w.weights[i] > 0);
                total += w.weights[i];
            }
            CHECK(total == doctest::Approx(1).epsilon(1e-12));
        }
    }
}

TEST_CASE("log-space weights survive extreme modulus ratios") {
    // Weight ratio (m1/m2)^2 = 1e16, so the losing permutation gets 1/(1 + 1e16).
    dsm::PermWeights w = dsm::ds_perm_weights({1e8, 1.0});
    CHECK(w.weights[0] == doctest::Approx(1).epsilon(1e-12));
    CHECK(w.weights[1] == doctest::Approx(1e-16).epsilon(1e-9));
    CHECK(w.weights[1] > 0);

    dsm::PermWeights w3 = dsm::ds_perm_weights({1e7, 1e3, 1.0});
    double total = 0;
    for (double x : w3.weights) {
        CHECK(std::isfinite(x));
        total += x;
    }
    CHECK(total == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("weights demand strictly descending positive moduli") {
    CHECK_THROWS_AS(dsm::ds_perm_weights({1.0, 2.0}), dsm::NotDescending);
    CHECK_THROWS_AS(dsm::ds_perm_weights({2.0, 2.0}), dsm::NotDescending);
    CHECK_THROWS_AS(dsm::ds_perm_weights({2.0, -1.0}), dsm::NotDescending);
}

TEST_CASE("projected line weights match brute force and descend") {
    dsm::RngStream rng(32);
    for (int d = 2; d <= 5; ++d) {
        std::vector<double> m = random_descending_moduli(d, rng);
        std::vector<double> p = dsm::ds_projected_cp_weights(m);
        std::vector<double> ref = oracle::projected_weights_brute(m);
        REQUIRE(static_cast<int>(p.size()) == d);
        double total = 0;
        for (int i = 0; i < d; ++i) {
            CHECK(p[i] == doctest::Approx(ref[i]).epsilon(1e-10));
            total += p[i];
            if (i > 0) CHECK(p[i - 1] > p[i]);
        }
        CHECK(total == doctest::Approx(1).epsilon(1e-12));
    }
}

TEST_CASE("flag measure atoms pair each ordering with the inverse weight") {
    std::vector<double> m = {3.0, 2.0, 1.0};
    ComplexVector diag{Complex(3), Complex(2), Complex(1)};
    ComplexMatrix a = ComplexMatrix::diagonal(diag);
    dsm::FlagMeasure fm = dsm::ds_measure_flag(a);
    REQUIRE(fm.points.size() == 6);
    REQUIRE(fm.weights.size() == 6);

    std::vector<Permutation> all = Permutation::all(3);
    std::vector<double> ref = oracle::perm_weights_brute(m);
    double total = 0;
    for (std::size_t t = 0; t < all.size(); ++t) {
        // For the diagonal matrix, eigenvector i is e_i, so the atom ordered
        // by tau has k-th vector supported on coordinate tau(k). Its weight
        // must equal the brute weight of tau^{-1}.
        const dsm::Flag& fl = fm.points[t];
        Permutation tau;
        tau.dim = 3;
        for (int k = 0; k < 3; ++k) {
            int support = -1;
            for (int i = 0; i < 3; ++i)
                if (std::abs(fl.vectors[k][i]) > 0.5) support = i;
            REQUIRE(support >= 0);
            tau.map[k] = support;
        }
        CHECK(fm.weights[t] ==
              doctest::Approx(ref[tau.inverse().lex_rank()]).epsilon(1e-11));
        total += fm.weights[t];
    }
    CHECK(total == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("flag atoms are eigenvector flags for a generic matrix") {
    dsm::RngStream rng(33);
    ComplexMatrix a(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    dsm::FlagMeasure fm;
    try {
        fm = dsm::ds_measure_flag(a);
    } catch (const dsm::ModulusTie&) {
        return;  // measure-zero event; nothing to check
    }
    for (const dsm::Flag& fl : fm.points)
        for (const ComplexVector& v : fl.vectors) {
            ComplexVector av = a * v;
            // image is a scalar multiple of v
            Complex lambda = 0;
            for (int i = 0; i < 3; ++i) lambda += std::conj(v[i]) * av[i];
            ComplexVector lv = v;
            lv *= lambda;
            av -= lv;
            CHECK(av.norm() < 1e-7 * (1 + std::abs(lambda)));
        }
}

TEST_CASE("torus closed form reproduces the dim-2 reference values") {
    std::vector<Permutation> all = Permutation::all(2);
    CHECK(dsm::torus_closed_form({2.0, 1.0}, all[0]) ==
          doctest::Approx(1.25).epsilon(1e-14));
    CHECK(dsm::torus_closed_form({2.0, 1.0}, all[1]) ==
          doctest::Approx(5).epsilon(1e-14));
}

TEST_CASE("torus closed form matches direct phase averaging") {
    std::vector<double> m = {3.0, 2.0, 1.0};
    for (const Permutation& sigma : Permutation::all(3)) {
        double se = 0;
        double mc = oracle::torus_phase_mc(m, sigma, 200000, 77, &se);
        double cf = dsm::torus_closed_form(m, sigma);
        CHECK(std::abs(mc - cf) < 3.5 * se);
    }
}

TEST_CASE("atom weight times torus value is ordering independent") {
    // Non-geometric moduli so the identity is exercised off the easy case.
    for (std::vector<double> m :
         {std::vector<double>{3.0, 2.0, 1.0}, std::vector<double>{5.0, 2.0, 1.3, 1.0}}) {
        dsm::PermWeights w = dsm::ds_perm_weights(m);
        std::vector<Permutation> all = Permutation::all(static_cast<int>(m.size()));
        double first = w.weight_of(all[0].inverse()) * dsm::torus_closed_form(m, all[0]);
        for (const Permutation& sigma : all) {
            double v = w.weight_of(sigma.inverse()) * dsm::torus_closed_form(m, sigma);
            CHECK(v == doctest::Approx(first).epsilon(1e-10));
        }
    }
}

TEST_CASE("exponent rearrangement identity holds for random moduli") {
    dsm::RngStream rng(34);
    for (int d = 2; d <= 4; ++d)
        for (int t = 0; t < 20; ++t)
            CHECK(dsm::exponent_bijection_check(random_descending_moduli(d, rng)));
}

TEST_CASE("projective measure of a real 2x2 covers the three kinds") {
    RealMatrix hyper(2, 2, {2.0, 0.0, 0.0, 1.0});
    dsm::Gl2rMeasure mh = dsm::ds_measure_gl2r(hyper);
    CHECK(mh.kind == dsm::Gl2Kind::HyperbolicAtom);
    REQUIRE(mh.atoms.points.size() == 1);
    CHECK(std::abs(mh.atoms.points[0]) < 1e-12);  // dominant direction e_1
    CHECK(mh.atoms.weights[0] == doctest::Approx(1).epsilon(1e-14));

    double c = std::cos(0.3), s = std::sin(0.3);
    RealMatrix rot(2, 2, {c, -s, s, c});
    dsm::Gl2rMeasure me = dsm::ds_measure_gl2r(rot);
    CHECK(me.kind == dsm::Gl2Kind::EllipticAcip);
    CHECK(std::abs(me.acip_alpha) < 1e-12);  // rotations leave angle uniform

    RealMatrix neg(2, 2, {0.5, 0.0, 0.0, -2.0});
    dsm::Gl2rMeasure mn = dsm::ds_measure_gl2r(neg);
    CHECK(mn.kind == dsm::Gl2Kind::NegDetAtoms);
    REQUIRE(mn.atoms.points.size() == 2);
    // Eigenvalues 0.5 and -2: weights |l| / (|l1| + |l2|) = 0.8 and 0.2 for
    // the modulus-2 direction e_2 and the modulus-0.5 direction e_1.
    double w_big = 0, w_small = 0;
    for (std::size_t i = 0; i < 2; ++i) {
        if (std::abs(std::abs(mn.atoms.points[i]) - 1.5707963267948966) < 1e-9)
            w_big = mn.atoms.weights[i];  // e_2 direction, angle -pi/2
        if (std::abs(mn.atoms.points[i]) < 1e-9) w_small = mn.atoms.weights[i];
    }
    CHECK(w_big == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(w_small == doctest::Approx(0.2).epsilon(1e-12));

    RealMatrix shear(2, 2, {1.0, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(dsm::ds_measure_gl2r(shear), dsm::Parabolic);
}

TEST_CASE("projective angle lands in the half-open interval") {
    CHECK(dsm::projective_angle(1.0, 0.0) == doctest::Approx(0).epsilon(1e-15));
    CHECK(dsm::projective_angle(0.0, 1.0) ==
          doctest::Approx(-1.5707963267948966).epsilon(1e-12));
    dsm::RngStream rng(35);
    for (int t = 0; t < 100; ++t) {
        double x = rng.normal(), y = rng.normal();
        double a = dsm::projective_angle(x, y);
        CHECK(a >= -1.5707963267948967);
        CHECK(a < 1.5707963267948966);
        // antipodal pair maps to the same angle
        CHECK(dsm::projective_angle(-x, -y) == doctest::Approx(a).epsilon(1e-10));
    }
}
