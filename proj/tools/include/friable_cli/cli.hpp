#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace friable::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_bad_args = 2;
inline constexpr int exit_budget = 3;

inline constexpr const char* csv_header_tag = "# friable-sums v1";

/// Entry point shared by the executable and the tests. argv[0] is ignored.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest form that reads back to the same double, at most 17 digits.
std::string format_number(double v);

} // namespace friable::cli
