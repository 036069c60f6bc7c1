#include "dsm/gl2r.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dsm/errors.hpp"
#include "dsm/parallel.hpp"

namespace dsm {

namespace {

constexpr double kPi = std::numbers::pi;

double fold_half_pi(double w) {
    // into [-pi/2, pi/2)
    w = std::fmod(w, kPi);
    if (w < -kPi / 2) w += kPi;
    if (w >= kPi / 2) w -= kPi;
    return w;
}

RealMatrix rotation2(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return RealMatrix(2, 2, {c, -s, s, c});
}

void check_2x2(const RealMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimOutOfRange("expected a 2x2 matrix");
}

void check_contraction(double a) {
    if (!(a > 0 && a < 1))
        throw BadParameter("the diagonal parameter must lie in (0, 1)");
}

}  // namespace

ProjPoint ProjPoint::from_angle(double omega) {
    ProjPoint p;
    p.angle = fold_half_pi(omega);
    double x = std::cos(p.angle), y = std::sin(p.angle);
    p.antislope = (y == 0) ? std::numeric_limits<double>::infinity() : x / y;
    return p;
}

ProjPoint ProjPoint::from_antislope(double s) {
    ProjPoint p;
    if (std::isinf(s)) {
        p.angle = 0;
        p.antislope = std::numeric_limits<double>::infinity();
        return p;
    }
    p.angle = fold_half_pi(std::atan2(1.0, s));
    p.antislope = s;
    return p;
}

ProjPoint ProjPoint::from_vector(double x, double y) {
    if (x == 0 && y == 0) throw BadParameter("zero vector has no direction");
    ProjPoint p;
    p.angle = projective_angle(x, y);
    p.antislope = (y == 0) ? std::numeric_limits<double>::infinity() : x / y;
    return p;
}

ConjugacyClass classify(const RealMatrix& b) {
    check_2x2(b);
    double dd = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
    double scale = b.frobenius_norm();
    if (std::abs(dd) <= 1e-12 * scale * scale) throw Singular("matrix is singular");
    if (dd < 0) return ConjugacyClass::Hyperbolic;
    double tr_norm = std::abs(b(0, 0) + b(1, 1)) / std::sqrt(dd);
    if (std::abs(tr_norm - 2.0) <= 1e-10) return ConjugacyClass::Parabolic;
    return tr_norm < 2.0 ? ConjugacyClass::Elliptic : ConjugacyClass::Hyperbolic;
}

ProjPoint mobius_act(const RealMatrix& b, const ProjPoint& p) {
    check_2x2(b);
    double x = std::cos(p.angle), y = std::sin(p.angle);
    double nx = b(0, 0) * x + b(0, 1) * y;
    double ny = b(1, 0) * x + b(1, 1) * y;
    return ProjPoint::from_vector(nx, ny);
}

double cauchy_antislope_density(double s) {
    if (std::isinf(s)) return 0.0;
    return 1.0 / (kPi * (1.0 + s * s));
}

AcipDescriptor::AcipDescriptor(Complex alpha) : alpha_(alpha) {
    if (!(std::abs(alpha) < 1.0))
        throw BadParameter("acip fixed point must lie inside the open disk");
    const int n = 1 << 13;
    double sum = 0;
    for (int j = 0; j < n; ++j) {
        double w = -kPi / 2 + kPi * (j + 0.5) / n;
        Complex z(std::cos(-2 * w), std::sin(-2 * w));
        sum += density_circle(z) / kPi;
    }
    norm_ = sum * (kPi / n);
}

double AcipDescriptor::density_circle(Complex z) const {
    return (1.0 - std::norm(alpha_)) / std::norm(z - alpha_);
}

double AcipDescriptor::density_angle(double omega) const {
    Complex z(std::cos(-2 * omega), std::sin(-2 * omega));
    return density_circle(z) / kPi / norm_;
}

AcipDescriptor acip_from_matrix(const RealMatrix& a) {
    Gl2rMeasure g = ds_measure_gl2r(a);
    if (g.kind != Gl2Kind::EllipticAcip)
        throw BadParameter("matrix is not elliptic; no absolutely continuous measure");
    return AcipDescriptor(g.acip_alpha);
}

std::pair<double, double> negdet_eigenvalues(double t) {
    double disc = std::sqrt(t * t + 4.0);
    return {(t + disc) / 2.0, (t - disc) / 2.0};
}

double spectral_radius_2x2(const RealMatrix& m) {
    check_2x2(m);
    double tr = m(0, 0) + m(1, 1);
    double dd = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double disc = tr * tr - 4.0 * dd;
    if (disc >= 0) return (std::abs(tr) + std::sqrt(disc)) / 2.0;
    return std::sqrt(dd);  // complex pair; disc < 0 forces dd > 0
}

double negdet_trace_cdf(double a, double t, bool decreasing_variant) {
    check_contraction(a);
    double span = 1.0 / a - a;
    if (std::abs(t) > span * (1 + 1e-12))
        throw OutOfSupport("trace outside [-(1/a - a), 1/a - a]");
    double x = std::clamp(t / span, -1.0, 1.0);
    double v = std::acos(x) / kPi;
    return decreasing_variant ? v : 1.0 - v;
}

double negdet_rho_cdf(double a, double rho) {
    check_contraction(a);
    if (rho <= 1.0) return 0.0;
    if (rho >= 1.0 / a) return 1.0;
    double span = 1.0 / a - a;
    double u = std::clamp((rho - 1.0 / rho) / span, 0.0, 1.0);
    return 1.0 - 2.0 * std::acos(u) / kPi;
}

double negdet_rho_density(double a, double rho) {
    check_contraction(a);
    if (rho < 1.0 || rho >= 1.0 / a)
        throw OutOfSupport("spectral radius outside [1, 1/a)");
    double arg = (1.0 / (a * a) - rho * rho) * (rho * rho - a * a);
    return (2.0 / kPi) * (rho * rho + 1.0) / (rho * std::sqrt(arg));
}

MCReport verify_ds_gl2r_negdet(double a, std::uint64_t n, std::uint64_t seed,
                               int workers, bool weighted) {
    check_contraction(a);

    struct State {
        CdfDistance cdf;
    };
    RealMatrix d(2, 2, {a, 0.0, 0.0, -1.0 / a});
    auto states = run_blocks<State>(
        n, seed, workers,
        [&](State& st, RngStream& rng, std::uint64_t count, int) {
            for (std::uint64_t i = 0; i < count; ++i) {
                double th = 2 * kPi * rng.uniform();
                Gl2rMeasure g = ds_measure_gl2r(rotation2(th) * d);
                for (int k = 0; k < 2; ++k) {
                    double u = (g.atoms.points[static_cast<size_t>(k)] + kPi / 2) / kPi;
                    double w = weighted ? g.atoms.weights[static_cast<size_t>(k)] : 0.5;
                    st.cdf.add(u, w);
                }
            }
        });

    CdfDistance merged;
    for (auto& st : states) merged.merge(st.cdf);

    MCReport r;
    r.n_samples = n;
    double ks = merged.distance();
    r.estimate = ks;
    r.ks_distance = ks;
    r.tolerance_used = std::max(0.01, 3.0 / std::sqrt(static_cast<double>(n)));
    r.pass = r.valid() && ks < r.tolerance_used;
    return r;
}

MCReport rho_norm_equality(const RealMatrix& a, MonotoneMap f,
                           int theta_samples, int v_samples) {
    check_2x2(a);
    if (theta_samples < 1 || v_samples < 1)
        throw BadParameter("quadrature sample counts must be positive");
    double dd = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    double scale = a.frobenius_norm();
    if (std::abs(dd) <= 1e-12 * scale * scale) throw Singular("matrix is singular");

    auto apply = [&](double x) { return f == MonotoneMap::Log ? std::log(x) : x; };

    double lhs = 0;
    for (int i = 0; i < theta_samples; ++i) {
        double th = 2 * kPi * (i + 0.5) / theta_samples;
        lhs += apply(spectral_radius_2x2(rotation2(th) * a));
    }
    lhs /= theta_samples;

    double rhs = 0;
    for (int j = 0; j < v_samples; ++j) {
        double w = -kPi / 2 + kPi * (j + 0.5) / v_samples;
        double x = std::cos(w), y = std::sin(w);
        double nx = a(0, 0) * x + a(0, 1) * y;
        double ny = a(1, 0) * x + a(1, 1) * y;
        rhs += apply(std::hypot(nx, ny));
    }
    rhs /= v_samples;

    MCReport r;
    r.n_samples = static_cast<std::uint64_t>(theta_samples) +
                  static_cast<std::uint64_t>(v_samples);
    r.lhs = lhs;
    r.rhs = rhs;
    r.estimate = lhs - rhs;
    r.tolerance_used = 1e-3;
    r.pass = dd > 0 ? std::abs(r.estimate) < r.tolerance_used
                    : r.estimate > -r.tolerance_used;
    return r;
}

}  // namespace dsm
