#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspcalc::cli {

// args excludes the program name. Exit codes: 0 ok, 1 domain error,
// 2 usage error, 3 scenario mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspcalc::cli
