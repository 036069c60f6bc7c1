#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsm/gl2r.hpp"
#include "dsm/matrix.hpp"
#include "dsm/verify.hpp"
#include "json.hpp"
#include "report_io.hpp"

namespace dsmtool {

namespace {

struct Opts {
  std::string field = "complex";
  int dim = 0;
  std::string matrix;
  std::string matrix_file;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format = "csv";
  int workers = 0;
  bool negdet = false;
};

void write_csv(const Opts& o, const std::string& check, const dsm::MCReport& r) {
  std::ofstream os = open_out(o.out, "report.csv");
  write_header(os, o.seed, o.workers);
  os << "check,n_samples,n_skipped_ties,estimate,std_error,ks_distance,pass,"
        "tolerance_used,lhs,rhs\n";
  os << check << ',' << r.n_samples << ',' << r.n_skipped_ties << ','
     << fmt(r.estimate) << ',' << fmt(r.std_error) << ','
     << (r.ks_distance ? fmt(*r.ks_distance) : std::string()) << ','
     << (r.pass ? 1 : 0) << ',' << fmt(r.tolerance_used) << ',' << fmt(r.lhs)
     << ',' << fmt(r.rhs) << '\n';
}

void write_json(const Opts& o, const std::string& check, const dsm::MCReport& r) {
  nlohmann::json j;
  j["tool"] = std::string("dsmlab ") + DSMLAB_VERSION;
  j["invocation"] = invocation();
  j["seed"] = o.seed;
  j["workers"] = o.workers;
  j["check"] = check;
  j["n_samples"] = r.n_samples;
  j["n_skipped_ties"] = r.n_skipped_ties;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  if (r.ks_distance)
    j["ks_distance"] = *r.ks_distance;
  else
    j["ks_distance"] = nullptr;
  j["pass"] = r.pass;
  j["tolerance_used"] = r.tolerance_used;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  std::ofstream os = open_out(o.out, "report.json");
  os << j.dump(2) << '\n';
}

int run(const Opts& o) {
  std::vector<double> entries = parse_matrix_entries(o.matrix, o.matrix_file);
  std::string check;
  dsm::MCReport report;
  if (o.field == "complex") {
    int d = static_cast<int>(entries.size());
    if (o.dim > 0 && o.dim != d)
      throw dsm::BadParameter("--dim disagrees with the number of matrix entries");
    dsm::ComplexVector diag(d);
    for (int i = 0; i < d; ++i) diag[i] = dsm::Complex(entries[i], 0.0);
    dsm::ComplexMatrix a = dsm::ComplexMatrix::diagonal(diag);
    check = "cp-averaging";
    report = dsm::verify_ds_property_cp(a, o.samples, o.seed, o.workers);
  } else {
    if (!o.negdet)
      throw dsm::BadParameter(
          "--field real2 implements the negative determinant family; pass --negdet");
    if (o.dim > 0 && o.dim != 2)
      throw dsm::BadParameter("--field real2 is two dimensional");
    double a = entries[0];
    check = "negdet-angles";
    report = dsm::verify_ds_gl2r_negdet(a, o.samples, o.seed, o.workers, true);
  }
  if (o.format == "json")
    write_json(o, check, report);
  else
    write_csv(o, check, report);
  std::printf("%s: %s  (n=%llu, ks=%s, tol=%s)\n", check.c_str(),
              report.pass ? "pass" : "FAIL",
              static_cast<unsigned long long>(report.n_samples),
              report.ks_distance ? fmt(*report.ks_distance).c_str() : "-",
              fmt(report.tolerance_used).c_str());
  return report.pass ? 0 : 1;
}

}  // namespace

void register_cmd_ds_verify(CLI::App& app, int& exit_code) {
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand(
      "ds-verify", "Monte Carlo check of the averaging property of the measure map");
  sub->add_option("--field", o->field, "matrix field: complex or real2")
      ->check(CLI::IsMember({"complex", "real2"}));
  sub->add_option("--dim", o->dim, "matrix dimension (checked against entries)");
  auto* input = sub->add_option_group("matrix input");
  input->add_option("--matrix", o->matrix, "comma separated diagonal entries");
  input->add_option("--matrix-file", o->matrix_file,
                    "file with diagonal entries, comma or whitespace separated");
  input->require_option(1);
  sub->add_option("--samples", o->samples, "Monte Carlo sample count");
  sub->add_option("--seed", o->seed, "random seed");
  sub->add_option("--out", o->out, "output directory for report.{csv,json}");
  sub->add_option("--format", o->format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", o->workers, "worker threads (0 = all cores)");
  sub->add_flag("--negdet", o->negdet,
                "real2 only: rotations of diag(a, -1/a) with a in (0,1)");
  sub->callback([o, &exit_code]() { exit_code = run(*o); });
}

}  // namespace dsmtool
