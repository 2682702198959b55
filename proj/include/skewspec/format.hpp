#pragma once

#include <charconv>
#include <string>

#include "json.hpp"

namespace skewspec
{
//! "%.17g" rendering, locale independent.
inline std::string format_double(double v)
{
    char buf[40];
    auto const res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

//! Serialize JSON with every floating value rendered by format_double;
//! indent < 0 gives a single line.
std::string dump_json(nlohmann::ordered_json const& j, int indent = 2);

}  // namespace skewspec
