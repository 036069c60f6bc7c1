#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace dsmtool {

// Remembers the exact command line so every output header can reproduce it.
void set_invocation(int argc, char** argv);
const std::string& invocation();

// 17 significant digits, enough to round-trip a double.
std::string fmt(double x);

// Comment header carried by every output file: tool version, the full
// invocation, the seed, and the resolved worker count.
void write_header(std::ostream& os, std::uint64_t seed, int workers);

// Opens dir/name for writing, creating the directory first.
std::ofstream open_out(const std::string& dir, const std::string& name);

// Parses diagonal entries from an inline comma list or a file (whitespace
// or comma separated); exactly one of the two must be nonempty.
std::vector<double> parse_matrix_entries(const std::string& inline_spec,
                                         const std::string& file_spec);

}  // namespace dsmtool
