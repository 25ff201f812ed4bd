#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vfcm::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit status; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace vfcm::cli
