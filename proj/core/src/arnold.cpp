#include "dsm/arnold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dsm/errors.hpp"
#include "dsm/parallel.hpp"

namespace dsm {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kEpsMax = 1.0 / kTwoPi;

double frac(double x) { return x - std::floor(x); }

double circle_dist(double a, double b) {
    double d = std::abs(frac(a) - frac(b));
    return std::min(d, 1.0 - d);
}

void check_pq(int p, int q) {
    if (q < 1 || q > 12) throw BadParameter("period q must lie in 1..12");
    if (p < 0 || p > q) throw BadParameter("rotation numerator out of range");
    if (std::gcd(p, q) != 1 && !(p == 0 && q == 1))
        throw BadParameter("p and q must be coprime");
}

int bin_of(double x, int bins) {
    int b = static_cast<int>(frac(x) * bins);
    return b >= bins ? bins - 1 : (b < 0 ? 0 : b);
}

}  // namespace

CircleMap::CircleMap(double c_, double eps_) : c(frac(c_)), eps(eps_) {
    if (!std::isfinite(c_) || !std::isfinite(eps_))
        throw BadParameter("circle map parameters must be finite");
    if (eps < 0 || eps > kEpsMax)
        throw BadParameter("eps must lie in [0, 1/(2 pi)] for a diffeomorphism");
}

double CircleMap::lift(double x) const { return x + c + eps * std::sin(kTwoPi * x); }

double CircleMap::apply(double x) const { return frac(lift(x)); }

double CircleMap::fprime(double x) const { return 1.0 + kTwoPi * eps * std::cos(kTwoPi * x); }

double CircleMap::fsecond(double x) const {
    return -kTwoPi * kTwoPi * eps * std::sin(kTwoPi * x);
}

double rotation_number(const CircleMap& m, std::uint64_t n_iter, double x0) {
    if (n_iter == 0) throw BadParameter("rotation_number needs at least one iteration");
    // Accumulate per-step displacements with x folded to [0,1), which keeps
    // sin(2 pi x) accurate no matter how far the lift travels.
    double x = frac(x0);
    double total = 0;
    for (std::uint64_t i = 0; i < n_iter; ++i) {
        double d = m.c + m.eps * std::sin(kTwoPi * x);
        total += d;
        x = frac(x + d);
    }
    return total / static_cast<double>(n_iter);
}

OrbitDerivatives orbit_derivatives(double eps, double c, double x, int p, int q) {
    OrbitDerivatives od;
    double xi = x;
    double X = 1;  // d x_i / d x_0
    double D = 0;  // d x_i / d c
    double P = 1;
    double slx = 0, slc = 0;  // sums for the log-derivatives of P
    for (int i = 0; i < q; ++i) {
        double fp = 1.0 + kTwoPi * eps * std::cos(kTwoPi * xi);
        double fs = -kTwoPi * kTwoPi * eps * std::sin(kTwoPi * xi);
        slx += fs / fp * X;
        slc += fs / fp * D;
        P *= fp;
        D = fp * D + 1.0;
        X *= fp;
        xi = xi + c + eps * std::sin(kTwoPi * xi);
    }
    od.G = xi - x - p;
    od.P = P;
    od.D = D;
    od.dPdx = P * slx;
    od.dPdc = P * slc;
    return od;
}

std::optional<double> newton_periodic(const CircleMap& m, int p, int q, double x_init) {
    check_pq(p, q);
    double x = x_init;
    for (int it = 0; it < 50; ++it) {
        OrbitDerivatives od = orbit_derivatives(m.eps, m.c, x, p, q);
        if (std::abs(od.G) < 1e-12) return frac(x);
        double gp = od.P - 1.0;
        if (std::abs(gp) < 1e-14)
            throw DerivativeVanishing("periodicity function has vanishing derivative");
        double step = -od.G / gp;
        if (std::abs(step) > 0.25) step = std::copysign(0.25, step);
        double xn = x + step;
        // fall back to halved steps when the residual refuses to shrink
        OrbitDerivatives odn = orbit_derivatives(m.eps, m.c, xn, p, q);
        int halvings = 0;
        while (std::abs(odn.G) > std::abs(od.G) && halvings < 12) {
            step /= 2;
            xn = x + step;
            odn = orbit_derivatives(m.eps, m.c, xn, p, q);
            ++halvings;
        }
        if (std::abs(odn.G) >= std::abs(od.G)) return std::nullopt;
        x = xn;
    }
    OrbitDerivatives od = orbit_derivatives(m.eps, m.c, x, p, q);
    if (std::abs(od.G) < 1e-12) return frac(x);
    return std::nullopt;
}

double solve_c_for_x(double eps, int p, int q, double x, double c_hint) {
    // dG/dc = D >= 1, so a bracket of width |G(hint)| on each side suffices.
    double c = c_hint;
    OrbitDerivatives od = orbit_derivatives(eps, c, x, p, q);
    double lo = c - std::abs(od.G) - 1e-12;
    double hi = c + std::abs(od.G) + 1e-12;
    OrbitDerivatives odlo = orbit_derivatives(eps, lo, x, p, q);
    OrbitDerivatives odhi = orbit_derivatives(eps, hi, x, p, q);
    int expand = 0;
    while (odlo.G > 0 && expand < 60) {
        lo -= (hi - lo);
        odlo = orbit_derivatives(eps, lo, x, p, q);
        ++expand;
    }
    while (odhi.G < 0 && expand < 120) {
        hi += (hi - lo);
        odhi = orbit_derivatives(eps, hi, x, p, q);
        ++expand;
    }
    if (odlo.G > 0 || odhi.G < 0) throw NoConvergence("could not bracket the parameter");

    for (int it = 0; it < 100; ++it) {
        od = orbit_derivatives(eps, c, x, p, q);
        if (std::abs(od.G) < 1e-13) return c;
        if (od.G > 0)
            hi = c;
        else
            lo = c;
        double cn = c - od.G / od.D;
        if (!(cn > lo && cn < hi)) cn = 0.5 * (lo + hi);
        c = cn;
    }
    od = orbit_derivatives(eps, c, x, p, q);
    if (std::abs(od.G) < 1e-10) return c;
    throw NoConvergence("parameter solve stalled");
}

namespace {

// Newton polish of the saddle-node system {G = 0, P - 1 = 0} in (x, c).
// The Jacobian rows are (P - 1, D) and (dPdx, dPdc).
std::pair<double, double> polish_saddle_node(double eps, int p, int q, double x, double c) {
    auto res_norm = [](const OrbitDerivatives& od) {
        return std::max(std::abs(od.G), std::abs(od.P - 1.0));
    };
    OrbitDerivatives od = orbit_derivatives(eps, c, x, p, q);
    for (int it = 0; it < 60 && res_norm(od) > 1e-12; ++it) {
        double a11 = od.P - 1.0, a12 = od.D;
        double a21 = od.dPdx, a22 = od.dPdc;
        double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-250) break;
        double r1 = od.G, r2 = od.P - 1.0;
        double dx = -(r1 * a22 - r2 * a12) / det;
        double dc = -(a11 * r2 - a21 * r1) / det;
        double lim = 0.25 / q;
        if (std::abs(dx) > lim) {
            dc *= lim / std::abs(dx);
            dx = std::copysign(lim, dx);
        }
        double xn = x + dx, cn = c + dc;
        OrbitDerivatives odn = orbit_derivatives(eps, cn, xn, p, q);
        int halvings = 0;
        while (res_norm(odn) > res_norm(od) && halvings < 20) {
            dx /= 2;
            dc /= 2;
            xn = x + dx;
            cn = c + dc;
            odn = orbit_derivatives(eps, cn, xn, p, q);
            ++halvings;
        }
        if (res_norm(odn) >= res_norm(od)) break;
        x = xn;
        c = cn;
        od = odn;
    }
    if (res_norm(od) > 1e-10)
        throw NoConvergence("saddle-node polish did not reach residual 1e-10");
    return {x, c};
}

}  // namespace

bool Tongue::contains(double c) const {
    double d = frac(c - c_lo);
    return d <= measure() || d > 1.0 - 1e-15;
}

Tongue tongue_interval(double eps, int p, int q) {
    if (!(eps > 0 && eps < kEpsMax))
        throw BadParameter("tongue boundaries need eps strictly inside (0, 1/(2 pi))");
    check_pq(p, q);

    const int n = std::max(256, 64 * q);
    double hint = static_cast<double>(p) / q;
    double best_lo = 0, best_hi = 0, x_lo = 0, x_hi = 0;
    for (int j = 0; j < n; ++j) {
        double x = (j + 0.5) / n;
        double c = solve_c_for_x(eps, p, q, x, hint);
        hint = c;
        if (j == 0 || c < best_lo) {
            best_lo = c;
            x_lo = x;
        }
        if (j == 0 || c > best_hi) {
            best_hi = c;
            x_hi = x;
        }
    }

    auto [xl, cl] = polish_saddle_node(eps, p, q, x_lo, best_lo);
    auto [xh, ch] = polish_saddle_node(eps, p, q, x_hi, best_hi);
    (void)xl;
    (void)xh;

    Tongue t;
    t.p = p;
    t.q = q;
    t.eps = eps;
    t.c_lo = std::min(cl, ch);
    t.c_hi = std::max(cl, ch);
    return t;
}

std::vector<Tongue> tongue_set(double eps, int q_max) {
    if (q_max < 1 || q_max > 12) throw BadParameter("q_max must lie in 1..12");
    std::vector<Tongue> out;
    for (int q = 1; q <= q_max; ++q) {
        for (int p = (q == 1 ? 0 : 1); p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            out.push_back(tongue_interval(eps, p, q));
            if (q == 1) break;
        }
    }
    return out;
}

std::optional<std::pair<int, int>> tongue_membership(const std::vector<Tongue>& tongues,
                                                     double c) {
    for (const Tongue& t : tongues) {
        if (t.contains(c)) return std::make_pair(t.p, t.q);
    }
    return std::nullopt;
}

double RotationCurve::mass() const {
    if (samples.empty()) return 0;
    double dx = 1.0 / static_cast<double>(samples.size() + gaps);
    double s = 0;
    for (const CurveSample& cs : samples) s += std::abs(cs.dcdx);
    return s * dx / q;
}

RotationCurve trace_rotation_curve(double eps, int p, int q, int x_grid_size) {
    if (x_grid_size < 8) throw BadParameter("curve grid too small");
    Tongue t = tongue_interval(eps, p, q);

    RotationCurve curve;
    curve.p = p;
    curve.q = q;
    curve.eps = eps;
    curve.samples.reserve(static_cast<size_t>(x_grid_size));
    double hint = 0.5 * (t.c_lo + t.c_hi);
    for (int j = 0; j < x_grid_size; ++j) {
        double x = (j + 0.5) / x_grid_size;
        double c;
        try {
            c = solve_c_for_x(eps, p, q, x, hint);
        } catch (const NoConvergence&) {
            ++curve.gaps;
            continue;
        }
        hint = c;
        OrbitDerivatives od = orbit_derivatives(eps, c, x, p, q);
        CurveSample cs;
        cs.x = x;
        cs.c_lift = c;
        cs.c = frac(c);
        cs.dcdx = -(od.P - 1.0) / od.D;
        cs.multiplier = od.P;
        cs.attracting = od.P < 1.0;
        curve.samples.push_back(cs);
    }
    if (curve.gaps * 100 >= x_grid_size)
        throw NoConvergence("more than 1% of curve grid points failed");
    return curve;
}

DensityTable hyperbolic_density(const std::vector<RotationCurve>& curves, int bins) {
    if (curves.empty()) throw BadParameter("need at least one rotation curve");
    if (bins < 1) throw BadParameter("need at least one bin");
    DensityTable table;
    table.values.assign(static_cast<size_t>(bins), 0.0);
    double mass = 0;
    for (const RotationCurve& curve : curves) {
        if (curve.samples.empty()) continue;
        double dx = 1.0 / static_cast<double>(curve.samples.size() + curve.gaps);
        for (const CurveSample& cs : curve.samples) {
            double m = std::abs(cs.dcdx) * dx / curve.q;
            table.values[static_cast<size_t>(bin_of(cs.x, bins))] += m * bins;
            mass += m;
        }
    }
    table.total_mass = mass;
    return table;
}

ParameterClass classify_parameter(double eps, double c, int q_max,
                                  std::uint64_t n_transient, double tol) {
    ParameterClass out;
    std::vector<Tongue> tongues;
    bool table_ok = true;
    try {
        tongues = tongue_set(eps, q_max);
    } catch (const Error&) {
        table_ok = false;
    }
    if (table_ok) {
        auto hit = tongue_membership(tongues, c);
        if (hit) {
            out.hyperbolic = true;
            out.p = hit->first;
            out.q = hit->second;
        }
        return out;
    }
    auto hit = detect_periodicity(CircleMap(c, eps), q_max, n_transient, tol);
    if (hit) {
        out.hyperbolic = true;
        out.p = hit->first;
        out.q = hit->second;
    }
    return out;
}

std::optional<std::pair<int, int>> detect_periodicity(const CircleMap& m, int q_max,
                                                      std::uint64_t n_transient,
                                                      double tol) {
    double x = 0.1234567;
    for (std::uint64_t i = 0; i < n_transient; ++i) x = m.apply(x);
    // window of q_max + 1 positions with running displacement sums
    std::vector<double> xs(static_cast<size_t>(q_max) + 1);
    std::vector<double> disp(static_cast<size_t>(q_max) + 1, 0.0);
    xs[0] = x;
    for (int i = 0; i < q_max; ++i) {
        double d = m.c + m.eps * std::sin(kTwoPi * xs[static_cast<size_t>(i)]);
        disp[static_cast<size_t>(i) + 1] = disp[static_cast<size_t>(i)] + d;
        xs[static_cast<size_t>(i) + 1] = frac(xs[static_cast<size_t>(i)] + d);
    }
    for (int q = 1; q <= q_max; ++q) {
        if (circle_dist(xs[static_cast<size_t>(q)], xs[0]) < tol) {
            int p = static_cast<int>(std::lround(disp[static_cast<size_t>(q)]));
            p = ((p % q) + q) % q;
            return std::make_pair(p, q);
        }
    }
    return std::nullopt;
}

LeftoverResult elliptic_leftover(double eps, std::uint64_t n_params,
                                 std::uint64_t n_iter, int bins, std::uint64_t seed,
                                 int workers, std::uint64_t n_transient, int q_max) {
    if (bins < 1 || n_params == 0 || n_iter == 0)
        throw BadParameter("elliptic_leftover needs positive budgets");
    std::vector<Tongue> tongues = tongue_set(eps, q_max);

    struct State {
        std::vector<double> counts;
        std::uint64_t n_elliptic = 0;
    };
    auto states = run_blocks<State>(
        n_params, seed, workers,
        [&](State& st, RngStream& rng, std::uint64_t count, int) {
            st.counts.assign(static_cast<size_t>(bins), 0.0);
            for (std::uint64_t i = 0; i < count; ++i) {
                double c = frac(rng.uniform());
                if (tongue_membership(tongues, c)) continue;
                ++st.n_elliptic;
                double x = rng.uniform();
                CircleMap m(c, eps);
                for (std::uint64_t k = 0; k < n_transient; ++k) x = m.apply(x);
                for (std::uint64_t k = 0; k < n_iter; ++k) {
                    x = m.apply(x);
                    st.counts[static_cast<size_t>(bin_of(x, bins))] += 1.0;
                }
            }
        });

    LeftoverResult lr;
    lr.n_params = n_params;
    lr.aggregate.values.assign(static_cast<size_t>(bins), 0.0);
    for (const State& st : states) {
        lr.n_elliptic += st.n_elliptic;
        if (st.counts.empty()) continue;
        for (int b = 0; b < bins; ++b)
            lr.aggregate.values[static_cast<size_t>(b)] += st.counts[static_cast<size_t>(b)];
    }
    // each kept parameter carries total mass 1 / n_params
    double scale = static_cast<double>(bins) /
                   (static_cast<double>(n_iter) * static_cast<double>(n_params));
    for (double& v : lr.aggregate.values) v *= scale;
    lr.elliptic_fraction =
        static_cast<double>(lr.n_elliptic) / static_cast<double>(n_params);
    lr.aggregate.total_mass = lr.elliptic_fraction;

    lr.leftover.values.assign(static_cast<size_t>(bins), 0.0);
    for (int b = 0; b < bins; ++b)
        lr.leftover.values[static_cast<size_t>(b)] =
            1.0 - lr.aggregate.values[static_cast<size_t>(b)];
    lr.leftover.total_mass = 1.0 - lr.aggregate.integral();
    return lr;
}

ObstructionReport obstruction_check(double eps, int q_max, int bins, std::uint64_t seed,
                                    std::uint64_t n_params, std::uint64_t n_iter,
                                    std::uint64_t n_transient, int workers) {
    std::vector<RotationCurve> curves;
    for (int q = 1; q <= q_max; ++q) {
        for (int p = (q == 1 ? 0 : 1); p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            curves.push_back(trace_rotation_curve(eps, p, q, std::max(1024, 128 * q)));
            if (q == 1) break;
        }
    }

    ObstructionReport rep;
    rep.hyperbolic = hyperbolic_density(curves, bins);
    LeftoverResult lr = elliptic_leftover(eps, n_params, n_iter, bins, seed, workers,
                                          n_transient, q_max);
    rep.leftover = lr.leftover;
    rep.elliptic_fraction = lr.elliptic_fraction;

    rep.margin = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < bins; ++b) {
        double h = rep.hyperbolic.values[static_cast<size_t>(b)];
        double e = rep.leftover.values[static_cast<size_t>(b)];
        rep.margin = std::max(rep.margin, e - h);
        if (h < e) rep.violation_bins.push_back(b);
    }
    return rep;
}

}  // namespace dsm
