#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace odokit::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on malformed input or usage errors, 1 when a mathematical precondition fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odokit::cli
