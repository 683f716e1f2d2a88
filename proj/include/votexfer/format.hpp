#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace votexfer {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Parses a grid of reals: "a,b,c" or "start:stop:step" (inclusive of stop
/// within half a step). Throws std::invalid_argument on bad syntax.
std::vector<double> parse_real_grid(std::string_view text);
std::vector<long long> parse_int_grid(std::string_view text);

}  // namespace votexfer
