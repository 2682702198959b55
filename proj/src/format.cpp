#include "skewspec/format.hpp"

#include <cmath>

namespace skewspec
{
namespace
{
void emit(std::string& out, nlohmann::ordered_json const& j, int indent, int depth)
{
    auto newline = [&](int d) {
        if (indent < 0)
            return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type())
    {
        case nlohmann::ordered_json::value_t::object:
        {
            if (j.empty())
            {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                if (!first)
                    out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::ordered_json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                emit(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array:
        {
            if (j.empty())
            {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (auto const& v : j)
            {
                if (!first)
                    out += ',';
                first = false;
                newline(depth + 1);
                emit(out, v, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float:
        {
            double const v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default: out += j.dump();
    }
}
}  // namespace

std::string dump_json(nlohmann::ordered_json const& j, int indent)
{
    std::string out;
    emit(out, j, indent, 0);
    return out;
}

}  // namespace skewspec
