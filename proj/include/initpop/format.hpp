#pragma once

#include <string>
#include <string_view>

namespace initpop {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Strict parse: the whole of `text` must be a number. Returns false otherwise.
bool parse_double(std::string_view text, double& out);

}  // namespace initpop
