#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace utvar::cli {

/// Exit codes: 0 holds / success, 1 identity fails, 2 error, 3 limit exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace utvar::cli
