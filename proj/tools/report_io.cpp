#include "report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dsm/errors.hpp"

namespace dsmtool {

namespace {
std::string g_invocation;
}

void set_invocation(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) s += ' ';
    s += argv[i];
  }
  g_invocation = s;
}

const std::string& invocation() { return g_invocation; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_header(std::ostream& os, std::uint64_t seed, int workers) {
  os << "# dsmlab " << DSMLAB_VERSION << "\n";
  os << "# invocation: " << g_invocation << "\n";
  os << "# seed: " << seed << "\n";
  os << "# workers: " << workers << "\n";
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::filesystem::create_directories(p);
  p /= name;
  std::ofstream os(p);
  if (!os) throw dsm::Error("cannot open output file: " + p.string());
  return os;
}

std::vector<double> parse_matrix_entries(const std::string& inline_spec,
                                         const std::string& file_spec) {
  if (inline_spec.empty() == file_spec.empty())
    throw dsm::BadParameter("pass exactly one of --matrix and --matrix-file");
  std::string text = inline_spec;
  if (!file_spec.empty()) {
    std::ifstream in(file_spec);
    if (!in) throw dsm::BadParameter("cannot read matrix file: " + file_spec);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  for (char& ch : text)
    if (ch == ',' || ch == '\n' || ch == '\t' || ch == '\r') ch = ' ';
  std::vector<double> entries;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) {
    try {
      std::size_t used = 0;
      double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      entries.push_back(v);
    } catch (const std::exception&) {
      throw dsm::BadParameter("bad matrix entry: " + token);
    }
  }
  if (entries.empty()) throw dsm::BadParameter("no matrix entries given");
  return entries;
}

}  // namespace dsmtool
