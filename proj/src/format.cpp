#include "initpop/format.hpp"

#include <array>
#include <charconv>
#include <cstdlib>

namespace initpop {

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), end};
}

std::string format_fixed(double value, int decimals)
{
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, decimals);
    if (ec != std::errc{}) {
        return format_double(value);
    }
    return {buf.data(), end};
}

bool parse_double(std::string_view text, double& out)
{
    if (text.empty() || text.front() == ' ' || text.back() == ' ') {
        return false;
    }
    // strtod (unlike from_chars in libstdc++ 11) accepts subnormals such as 5e-324.
    const std::string copy(text);
    char* end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (end != copy.c_str() + copy.size()) {
        return false;
    }
    out = value;
    return true;
}

}  // namespace initpop
