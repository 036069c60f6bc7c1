#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dsm/stats.hpp"

namespace dsm {

// The standard circle family x -> x + c + eps sin(2 pi x) mod 1, a
// diffeomorphism for eps <= 1/(2 pi). eps = 0 (rigid rotation) is accepted
// as a degenerate input; c is reduced mod 1 on construction.
struct CircleMap {
    double c = 0;
    double eps = 0;

    CircleMap(double c, double eps);

    // Lift F(x) = x + c + eps sin(2 pi x); F(x + 1) = F(x) + 1 exactly.
    double lift(double x) const;
    // f = F mod 1.
    double apply(double x) const;
    double fprime(double x) const;
    double fsecond(double x) const;
};

// Orbit displacement estimate (F^n(x0) - x0) / n; within a tongue the error
// decays exponentially, elsewhere it is O(1/n).
double rotation_number(const CircleMap& m, std::uint64_t n_iter, double x0 = 0);

// The periodicity function and its partial derivatives along the orbit
// x_0 = x, x_{i+1} = F(x_i):
//   G = F^q(x) - x - p,
//   P = d F^q / dx = prod_i f'(x_i)     (orbit multiplier),
//   D = d F^q / dc                      (via D_{i+1} = f'(x_i) D_i + 1),
// plus the x- and c-derivatives of P needed for saddle-node tracking.
// D >= 1 always, so G is strictly increasing in c.
struct OrbitDerivatives {
    double G = 0;
    double P = 1;
    double D = 0;
    double dPdx = 0;
    double dPdc = 0;
};

OrbitDerivatives orbit_derivatives(double eps, double c, double x, int p, int q);

// Newton solve of F^q(x) - x - p = 0 in x at fixed parameters; returns the
// root folded into [0,1), or nullopt when 50 damped iterations fail to reach
// residual 1e-12. Throws DerivativeVanishing when |P - 1| < 1e-14 at the
// current iterate (saddle-node degeneracy).
std::optional<double> newton_periodic(const CircleMap& m, int p, int q, double x_init);

// Unique parameter c (on the lift) with F_c^q(x) = x + p, found by bracketed
// Newton in c; exists and is single valued because dG/dc >= 1.
double solve_c_for_x(double eps, int p, int q, double x, double c_hint);

// Parameter interval of rotation number p/q. c_lo and c_hi live on the lift:
// the 0/1 tongue is [-eps, eps], wrapping through c = 0.
struct Tongue {
    int p = 0;
    int q = 1;
    double c_lo = 0;
    double c_hi = 0;
    double eps = 0;

    double measure() const { return c_hi > c_lo ? c_hi - c_lo : 0.0; }
    bool wrapped() const { return c_lo < 0 || c_hi > 1; }
    bool contains(double c) const;  // c taken mod 1
};

// Boundary saddle-node parameters of the p/q tongue: grid scan of the
// rotation-curve graph c = g(x) followed by a two-variable Newton polish of
// {G = 0, P = 1} at both extrema, residuals below 1e-10.
Tongue tongue_interval(double eps, int p, int q);

// Every coprime pair with q <= q_max, ordered by q then p.
std::vector<Tongue> tongue_set(double eps, int q_max);

// Hyperbolic tongue containing c, if any (smallest q wins).
std::optional<std::pair<int, int>> tongue_membership(const std::vector<Tongue>& tongues,
                                                     double c);

struct CurveSample {
    double x = 0;
    double c = 0;       // mod 1
    double c_lift = 0;  // on the lift, inside [c_lo, c_hi]
    double dcdx = 0;    // -(P - 1) / D
    double multiplier = 1;
    bool attracting = false;
};

// The graph c = g(x) of the p/q periodic-point condition, sampled at grid
// midpoints. Each periodic orbit appears q times along the graph, hence the
// 1/q factor in mass(): integrating (1/q)|dc/dx| over the circle counts
// every orbit once and totals 2 * tongue measure (both stability branches).
struct RotationCurve {
    int p = 0;
    int q = 1;
    double eps = 0;
    std::vector<CurveSample> samples;
    int gaps = 0;

    double mass() const;
};

RotationCurve trace_rotation_curve(double eps, int p, int q, int x_grid_size);

// Parameter-averaged density of the periodic-orbit measures:
// density(x) = sum over curves of (1/q) |dc/dx| binned over [0,1).
DensityTable hyperbolic_density(const std::vector<RotationCurve>& curves, int bins);

struct ParameterClass {
    bool hyperbolic = false;
    int p = 0;
    int q = 0;
};

// Tongue-membership classification; n_transient and tol drive the
// operational fallback (orbit settles into a q <= q_max cycle within tol)
// used when the tongue table cannot be built.
ParameterClass classify_parameter(double eps, double c, int q_max = 12,
                                  std::uint64_t n_transient = 10000, double tol = 1e-9);

// Operational periodicity detector behind the fallback path.
std::optional<std::pair<int, int>> detect_periodicity(const CircleMap& m, int q_max,
                                                      std::uint64_t n_transient,
                                                      double tol);

struct LeftoverResult {
    DensityTable leftover;   // E(x) = 1 - aggregate density
    DensityTable aggregate;  // mass = elliptic parameter fraction
    double elliptic_fraction = 0;
    std::uint64_t n_params = 0;
    std::uint64_t n_elliptic = 0;
};

// Samples parameters c uniformly, drops the hyperbolic ones (tongues with
// q <= q_max), and histograms long orbits of the elliptic rest. Each kept
// parameter contributes total mass 1/n_params, so the aggregate integrates
// to the elliptic fraction and the leftover to one minus it.
LeftoverResult elliptic_leftover(double eps, std::uint64_t n_params = 10000,
                                 std::uint64_t n_iter = 100000, int bins = 100,
                                 std::uint64_t seed = 1, int workers = 0,
                                 std::uint64_t n_transient = 20000, int q_max = 12);

struct ObstructionReport {
    DensityTable hyperbolic;  // H, from the traced tongues q <= q_max
    DensityTable leftover;    // E, from the elliptic aggregate
    std::vector<int> violation_bins;  // bins with H < E
    double margin = 0;                // max over bins of E - H
    double elliptic_fraction = 0;
};

// Bin-by-bin comparison of the available hyperbolic mass H against the
// required leftover E. H(x) >= E(x) everywhere is necessary for the family
// to admit a coherent measure assignment; bins violating it are reported
// together with the worst margin (negative margin means no violation).
ObstructionReport obstruction_check(double eps, int q_max, int bins = 100,
                                    std::uint64_t seed = 1,
                                    std::uint64_t n_params = 20000,
                                    std::uint64_t n_iter = 100000,
                                    std::uint64_t n_transient = 20000,
                                    int workers = 0);

}  // namespace dsm
