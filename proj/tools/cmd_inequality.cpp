#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsm/matrix.hpp"
#include "dsm/verify.hpp"
#include "report_io.hpp"

namespace dsmtool {

namespace {

struct Opts {
  std::string field = "complex";
  int dim = 0;
  int k = 1;
  std::string f = "id";
  std::string matrix;
  std::string matrix_file;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string out = ".";
  int workers = 0;
};

int run(const Opts& o) {
  std::vector<double> entries = parse_matrix_entries(o.matrix, o.matrix_file);
  int d = static_cast<int>(entries.size());
  if (o.dim > 0 && o.dim != d)
    throw dsm::BadParameter("--dim disagrees with the number of matrix entries");
  dsm::ComplexVector diag(d);
  for (int i = 0; i < d; ++i) diag[i] = dsm::Complex(entries[i], 0.0);
  dsm::ComplexMatrix a = dsm::ComplexMatrix::diagonal(diag);
  dsm::Field field =
      o.field == "real" ? dsm::Field::Real : dsm::Field::Complex;
  dsm::MonotoneMap f =
      o.f == "log" ? dsm::MonotoneMap::Log : dsm::MonotoneMap::Identity;

  dsm::MCReport r =
      dsm::estimate_inequality(a, field, o.k, f, o.samples, o.seed, o.workers);

  // The multiplicative constant the Monte Carlo run implies: the factor by
  // which the minor average exceeds the sphere average.
  double implied_c = (f == dsm::MonotoneMap::Identity) ? r.lhs / r.rhs
                                                       : std::exp(r.lhs - r.rhs);

  std::ofstream os = open_out(o.out, "inequality.csv");
  write_header(os, o.seed, o.workers);
  os << "field,dim,k,f,n_samples,lhs,rhs,gap,std_error,implied_c\n";
  os << o.field << ',' << d << ',' << o.k << ',' << o.f << ',' << r.n_samples
     << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.estimate) << ','
     << fmt(r.std_error) << ',' << fmt(implied_c) << '\n';

  std::printf("field=%s d=%d k=%d f=%s\n", o.field.c_str(), d, o.k, o.f.c_str());
  std::printf("  lhs=%s rhs=%s gap=%s se=%s implied_c=%s\n", fmt(r.lhs).c_str(),
              fmt(r.rhs).c_str(), fmt(r.estimate).c_str(),
              fmt(r.std_error).c_str(), fmt(implied_c).c_str());
  return 0;
}

}  // namespace

void register_cmd_inequality(CLI::App& app, int& exit_code) {
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand(
      "inequality",
      "Compare the minor average of a coset against the sphere average");
  sub->add_option("--field", o->field, "matrix field: complex or real")
      ->check(CLI::IsMember({"complex", "real"}));
  sub->add_option("--dim", o->dim, "matrix dimension (checked against entries)");
  sub->add_option("--k", o->k, "exterior power order, 1..d")->required();
  sub->add_option("--f", o->f, "monotone map applied to both sides")
      ->check(CLI::IsMember({"id", "log"}));
  auto* input = sub->add_option_group("matrix input");
  input->add_option("--matrix", o->matrix, "comma separated diagonal entries");
  input->add_option("--matrix-file", o->matrix_file,
                    "file with diagonal entries, comma or whitespace separated");
  input->require_option(1);
  sub->add_option("--samples", o->samples, "Monte Carlo sample count");
  sub->add_option("--seed", o->seed, "random seed");
  sub->add_option("--out", o->out, "output directory for inequality.csv");
  sub->add_option("--workers", o->workers, "worker threads (0 = all cores)");
  sub->callback([o, &exit_code]() { exit_code = run(*o); });
}

}  // namespace dsmtool
