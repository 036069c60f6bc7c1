#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsm/blaschke.hpp"
#include "dsm/gl2r.hpp"
#include "dsm/rng.hpp"
#include "dsm/verify.hpp"
#include "report_io.hpp"

namespace dsmtool {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Opts {
  double a = 0;
  double theta = 1.0;
  std::string mode;
  std::uint64_t samples = 1000000;
  int grid = 256;
  int bins = 100;
  int iters = 30;
  int theta_samples = 0;
  int v_samples = 10000;
  int grid_size = 40000;
  std::uint64_t seed = 1;
  std::string out = ".";
  int workers = 0;
};

dsm::RealMatrix rotation_times_diag(double theta, double d0, double d1) {
  double c = std::cos(theta), s = std::sin(theta);
  return dsm::RealMatrix(2, 2, {c * d0, -s * d1, s * d0, c * d1});
}

// Spectral radius and trace of R_theta diag(a, -1/a), sampled over uniform
// theta; their empirical CDFs are tabulated against the closed forms.
int run_negdet_cdf(const Opts& o) {
  double span = 1.0 / o.a - o.a;
  // Validates a up front through the closed form.
  dsm::negdet_trace_cdf(o.a, 0.0);

  std::vector<std::uint64_t> t_counts(o.grid, 0), r_counts(o.grid, 0);
  dsm::RngStream rng(o.seed, 0);
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    double theta = rng.uniform(0.0, 2.0 * kPi);
    double t = -span * std::cos(theta);
    double rho = (std::abs(t) + std::sqrt(t * t + 4.0)) / 2.0;
    int tb = static_cast<int>((t + span) / (2.0 * span) * o.grid);
    int rb = static_cast<int>((rho - 1.0) / (1.0 / o.a - 1.0) * o.grid);
    ++t_counts[std::clamp(tb, 0, o.grid - 1)];
    ++r_counts[std::clamp(rb, 0, o.grid - 1)];
  }

  double ks_t = 0, ks_r = 0;
  {
    std::ofstream os = open_out(o.out, "trace_cdf.csv");
    write_header(os, o.seed, o.workers);
    std::string body;
    std::uint64_t acc = 0;
    for (int b = 0; b < o.grid; ++b) {
      acc += t_counts[b];
      double t = -span + 2.0 * span * (b + 1.0) / o.grid;
      double ana = dsm::negdet_trace_cdf(o.a, std::min(t, span));
      double emp = static_cast<double>(acc) / o.samples;
      ks_t = std::max(ks_t, std::abs(ana - emp));
      body += std::to_string(b) + ',' + fmt(t) + ',' + fmt(ana) + ',' +
              fmt(emp) + ',' +
              fmt(dsm::negdet_trace_cdf(o.a, std::min(t, span), true)) + '\n';
    }
    os << "# ks_distance: " << fmt(ks_t) << '\n';
    os << "bin,t,F_analytic,F_empirical,F_decreasing_variant\n" << body;
  }
  {
    std::ofstream os = open_out(o.out, "rho_cdf.csv");
    write_header(os, o.seed, o.workers);
    std::string body;
    std::uint64_t acc = 0;
    double w = (1.0 / o.a - 1.0) / o.grid;
    for (int b = 0; b < o.grid; ++b) {
      acc += r_counts[b];
      double rho = 1.0 + w * (b + 1.0);
      double ana = dsm::negdet_rho_cdf(o.a, rho);
      double emp = static_cast<double>(acc) / o.samples;
      ks_r = std::max(ks_r, std::abs(ana - emp));
      double mid = 1.0 + w * (b + 0.5);
      body += std::to_string(b) + ',' + fmt(rho) + ',' + fmt(ana) + ',' +
              fmt(emp) + ',' + fmt(mid) + ',' +
              fmt(dsm::negdet_rho_density(o.a, mid)) + ',' +
              fmt(r_counts[b] / (o.samples * w)) + '\n';
    }
    os << "# ks_distance: " << fmt(ks_r) << '\n';
    os << "bin,rho,F_analytic,F_empirical,rho_mid,density_analytic,"
          "density_empirical\n"
       << body;
  }
  std::printf("trace cdf ks=%s, spectral radius cdf ks=%s (n=%llu)\n",
              fmt(ks_t).c_str(), fmt(ks_r).c_str(),
              static_cast<unsigned long long>(o.samples));
  return 0;
}

// Rotation-averaged pushforward of the uniform circle measure under the
// conjugated disk map of diag(a, 1/a); flat in the limit.
int run_posdet_average(const Opts& o) {
  dsm::BlaschkeFactor factor = dsm::cayley_blaschke(o.a, 0.0);
  dsm::BlaschkeProduct b = dsm::BlaschkeProduct::from_factor(factor);
  int theta_samples = o.theta_samples > 0 ? o.theta_samples : 400;
  dsm::DensityTable table = dsm::theta_average_pushforward(
      b, o.iters, o.grid_size, theta_samples, o.bins, o.workers);
  double sup_dev = 0;
  for (double v : table.values) sup_dev = std::max(sup_dev, std::abs(v - 1.0));
  std::ofstream os = open_out(o.out, "posdet_average.csv");
  write_header(os, o.seed, o.workers);
  os << "# sup_deviation: " << fmt(sup_dev) << '\n';
  os << "bin,phi_mid,density,deviation\n";
  for (int bin = 0; bin < table.bins(); ++bin) {
    double phi = 2.0 * kPi * (bin + 0.5) / table.bins();
    os << bin << ',' << fmt(phi) << ',' << fmt(table.values[bin]) << ','
       << fmt(table.values[bin] - 1.0) << '\n';
  }
  std::printf("rotation-averaged pushforward: sup deviation from flat %s\n",
              fmt(sup_dev).c_str());
  return 0;
}

// The average-growth identity for diag(a, 1/a) under both monotone maps.
int run_rho_norm(const Opts& o) {
  if (o.a == 0.0) throw dsm::BadParameter("--a must be nonzero");
  dsm::RealMatrix a(2, 2, {o.a, 0.0, 0.0, 1.0 / o.a});
  int theta_samples = o.theta_samples > 0 ? o.theta_samples : 10000;
  std::ofstream os = open_out(o.out, "rho_norm.csv");
  write_header(os, o.seed, o.workers);
  os << "f,lhs,rhs,gap,tolerance,pass\n";
  bool all_pass = true;
  for (dsm::MonotoneMap f : {dsm::MonotoneMap::Identity, dsm::MonotoneMap::Log}) {
    dsm::MCReport r =
        dsm::rho_norm_equality(a, f, theta_samples, o.v_samples);
    const char* name = f == dsm::MonotoneMap::Identity ? "id" : "log";
    os << name << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
       << fmt(r.estimate) << ',' << fmt(r.tolerance_used) << ','
       << (r.pass ? 1 : 0) << '\n';
    std::printf("f=%s: lhs=%s rhs=%s gap=%s %s\n", name, fmt(r.lhs).c_str(),
                fmt(r.rhs).c_str(), fmt(r.estimate).c_str(),
                r.pass ? "pass" : "FAIL");
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

// Analytic acip of an elliptic rotation-scale matrix against the angle
// histogram of a long projective orbit.
int run_acip(const Opts& o) {
  if (o.a <= 0.0) throw dsm::BadParameter("--a must be positive");
  dsm::RealMatrix m = rotation_times_diag(o.theta, o.a, 1.0 / o.a);
  dsm::AcipDescriptor acip = dsm::acip_from_matrix(m);

  int bins = o.bins;
  std::vector<std::uint64_t> counts(bins, 0);
  dsm::ProjPoint p = dsm::ProjPoint::from_angle(0.3);
  const std::uint64_t transient = 1000;
  for (std::uint64_t i = 0; i < transient; ++i) p = dsm::mobius_act(m, p);
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    p = dsm::mobius_act(m, p);
    int b = static_cast<int>((p.angle + kPi / 2.0) / kPi * bins);
    ++counts[std::clamp(b, 0, bins - 1)];
  }

  double w = kPi / bins;
  double sup_dev = 0;
  std::ofstream os = open_out(o.out, "acip.csv");
  write_header(os, o.seed, o.workers);
  std::string body;
  for (int b = 0; b < bins; ++b) {
    double omega = -kPi / 2.0 + w * (b + 0.5);
    double ana = acip.density_angle(omega);
    double emp = counts[b] / (static_cast<double>(o.samples) * w);
    sup_dev = std::max(sup_dev, std::abs(ana - emp));
    body += std::to_string(b) + ',' + fmt(omega) + ',' + fmt(ana) + ',' +
            fmt(emp) + '\n';
  }
  os << "# alpha: " << fmt(acip.alpha().real()) << (acip.alpha().imag() < 0 ? "" : "+")
     << fmt(acip.alpha().imag()) << "i\n";
  os << "# normalization: " << fmt(acip.normalization()) << '\n';
  os << "# sup_deviation: " << fmt(sup_dev) << '\n';
  os << "bin,omega_mid,density_analytic,density_empirical\n" << body;
  std::printf("acip |alpha|=%s, sup |empirical - analytic| = %s\n",
              fmt(std::abs(acip.alpha())).c_str(), fmt(sup_dev).c_str());
  return 0;
}

int run(const Opts& o) {
  if (o.mode == "negdet-cdf") return run_negdet_cdf(o);
  if (o.mode == "posdet-average") return run_posdet_average(o);
  if (o.mode == "rho-norm") return run_rho_norm(o);
  return run_acip(o);
}

}  // namespace

void register_cmd_gl2r(CLI::App& app, int& exit_code) {
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand(
      "gl2r", "Closed forms for 2x2 rotation cosets against empirical runs");
  sub->add_option("--a", o->a, "scale parameter of diag(a, 1/a)")->required();
  sub->add_option("--mode", o->mode, "what to tabulate")
      ->check(CLI::IsMember({"negdet-cdf", "posdet-average", "rho-norm", "acip"}))
      ->required();
  sub->add_option("--theta", o->theta, "rotation angle (acip mode)");
  sub->add_option("--samples", o->samples, "Monte Carlo / orbit samples");
  sub->add_option("--grid", o->grid, "CDF table rows (negdet-cdf)");
  sub->add_option("--bins", o->bins, "histogram bins");
  sub->add_option("--iters", o->iters, "pushforward iterations (posdet-average)");
  sub->add_option("--theta-samples", o->theta_samples,
                  "rotation samples (posdet-average, rho-norm)");
  sub->add_option("--v-samples", o->v_samples, "direction samples (rho-norm)");
  sub->add_option("--grid-size", o->grid_size,
                  "circle grid points (posdet-average)");
  sub->add_option("--seed", o->seed, "random seed");
  sub->add_option("--out", o->out, "output directory");
  sub->add_option("--workers", o->workers, "worker threads (0 = all cores)");
  sub->callback([o, &exit_code]() { exit_code = run(*o); });
}

}  // namespace dsmtool
