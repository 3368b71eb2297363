#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace curvedepth {

/// Library version embedded in every emitted record.
const char* version();

/// Parses a degree list such as "4,16,36" or a range "a:b" / "a:b:step"
/// (inclusive). Throws std::invalid_argument on malformed or empty input.
std::vector<int> parse_degree_list(const std::string& text);

/// Entry point of the command-line tool. `args` excludes the program name.
/// Records go to `out` unless --out names a file; diagnostics and, with
/// `table` set, a human-readable table go to `err`.
/// Returns 0 on success, 1 on argument errors, 2 on computation failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool table = false);

}  // namespace curvedepth
