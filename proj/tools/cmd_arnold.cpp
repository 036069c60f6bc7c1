#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsm/arnold.hpp"
#include "report_io.hpp"

namespace dsmtool {

namespace {

struct Opts {
  double eps = 0;
  int qmax = 12;
  int bins = 100;
  std::uint64_t params = 20000;
  std::uint64_t iters = 100000;
  std::uint64_t transient = 20000;
  int grid = 0;
  std::uint64_t seed = 1;
  std::string out = ".";
  int workers = 0;
};

void write_plot_script(const Opts& o) {
  std::ofstream os = open_out(o.out, "plot.gp");
  os << "# gnuplot script for the circle-family outputs\n";
  os << "set datafile separator ','\n";
  os << "set key top right\n\n";
  os << "set terminal pngcairo size 900,600\n\n";
  os << "set output 'tongues.png'\n";
  os << "set xlabel 'c'\n";
  os << "set ylabel 'rotation number'\n";
  os << "plot 'tongues.csv' using 3:($1/$2):($4-$3) with xerrorbars "
        "title 'tongues q <= " << o.qmax << "'\n\n";
  os << "set output 'obstruction.png'\n";
  os << "set xlabel 'x'\n";
  os << "set ylabel 'density'\n";
  os << "plot 'obstruction.csv' using 2:3 with lines title 'hyperbolic H', \\\n";
  os << "     'obstruction.csv' using 2:4 with lines title 'leftover E'\n";
}

int run(const Opts& o) {
  std::vector<dsm::Tongue> tongues = dsm::tongue_set(o.eps, o.qmax);

  {
    std::ofstream os = open_out(o.out, "tongues.csv");
    write_header(os, o.seed, o.workers);
    os << "p,q,c_lo,c_hi,measure\n";
    for (const dsm::Tongue& t : tongues)
      os << t.p << ',' << t.q << ',' << fmt(t.c_lo) << ',' << fmt(t.c_hi)
         << ',' << fmt(t.measure()) << '\n';
  }

  std::vector<dsm::RotationCurve> curves;
  curves.reserve(tongues.size());
  for (const dsm::Tongue& t : tongues) {
    int grid = o.grid > 0 ? o.grid : std::max(1024, 128 * t.q);
    curves.push_back(dsm::trace_rotation_curve(o.eps, t.p, t.q, grid));
    const dsm::RotationCurve& rc = curves.back();
    std::ofstream os = open_out(o.out, "curves_" + std::to_string(t.p) + "_" +
                                           std::to_string(t.q) + ".csv");
    write_header(os, o.seed, o.workers);
    os << "x,c,dcdx,stability\n";
    for (const dsm::CurveSample& s : rc.samples)
      os << fmt(s.x) << ',' << fmt(s.c) << ',' << fmt(s.dcdx) << ','
         << (s.attracting ? "attracting" : "repelling") << '\n';
  }

  dsm::DensityTable hyper = dsm::hyperbolic_density(curves, o.bins);
  {
    std::ofstream os = open_out(o.out, "hyperbolic_density.csv");
    write_header(os, o.seed, o.workers);
    os << "# total_mass: " << fmt(hyper.total_mass) << '\n';
    os << "bin,x_mid,density\n";
    for (int b = 0; b < hyper.bins(); ++b)
      os << b << ',' << fmt((b + 0.5) / hyper.bins()) << ','
         << fmt(hyper.values[b]) << '\n';
  }

  dsm::LeftoverResult left = dsm::elliptic_leftover(
      o.eps, o.params, o.iters, o.bins, o.seed, o.workers, o.transient, o.qmax);
  {
    std::ofstream os = open_out(o.out, "leftover.csv");
    write_header(os, o.seed, o.workers);
    os << "# elliptic_fraction: " << fmt(left.elliptic_fraction) << '\n';
    os << "# n_params: " << left.n_params << '\n';
    os << "# n_elliptic: " << left.n_elliptic << '\n';
    os << "bin,x_mid,aggregate,leftover\n";
    for (int b = 0; b < o.bins; ++b)
      os << b << ',' << fmt((b + 0.5) / o.bins) << ','
         << fmt(left.aggregate.values[b]) << ',' << fmt(left.leftover.values[b])
         << '\n';
  }

  int violations = 0;
  double margin = -1e300;
  {
    std::ofstream os = open_out(o.out, "obstruction.csv");
    write_header(os, o.seed, o.workers);
    os << "bin,x_mid,hyperbolic,leftover,violation\n";
    std::string body;
    for (int b = 0; b < o.bins; ++b) {
      double h = hyper.values[b];
      double e = left.leftover.values[b];
      margin = std::max(margin, e - h);
      bool bad = h < e;
      violations += bad ? 1 : 0;
      body += std::to_string(b) + ',' + fmt((b + 0.5) / o.bins) + ',' + fmt(h) +
              ',' + fmt(e) + ',' + (bad ? "1" : "0") + '\n';
    }
    os << "# margin: " << fmt(margin) << '\n';
    os << "# violation_bins: " << violations << '\n';
    os << body;
  }

  write_plot_script(o);

  std::printf("tongues: %zu (q <= %d), hyperbolic mass %s\n", tongues.size(),
              o.qmax, fmt(hyper.total_mass).c_str());
  std::printf("elliptic fraction: %s\n", fmt(left.elliptic_fraction).c_str());
  std::printf("obstruction: %d violating bins, margin %s\n", violations,
              fmt(margin).c_str());
  return 0;
}

}  // namespace

void register_cmd_arnold(CLI::App& app, int& exit_code) {
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand(
      "arnold",
      "Tongues, rotation curves, and the measure obstruction of the circle family");
  sub->add_option("--eps", o->eps, "nonlinearity, in (0, 1/(2 pi))")->required();
  sub->add_option("--qmax", o->qmax, "largest tongue denominator");
  sub->add_option("--bins", o->bins, "histogram bins over the circle");
  sub->add_option("--params", o->params, "parameter samples for the leftover");
  sub->add_option("--iters", o->iters, "orbit length per elliptic parameter");
  sub->add_option("--transient", o->transient, "discarded orbit prefix");
  sub->add_option("--grid", o->grid,
                  "curve grid points (0 = max(1024, 128 q) per tongue)");
  sub->add_option("--seed", o->seed, "random seed");
  sub->add_option("--out", o->out, "output directory");
  sub->add_option("--workers", o->workers, "worker threads (0 = all cores)");
  sub->callback([o, &exit_code]() { exit_code = run(*o); });
}

}  // namespace dsmtool
