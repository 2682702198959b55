#include "skewspec/graph_model.hpp"

#include <algorithm>
#include <array>
#include <locale>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "skewspec/errors.hpp"

namespace skewspec
{
GraphParams::GraphParams(std::size_t n, double p, double q) : n_(n), p_(p), q_(q)
{
    if (n < 1)
        throw InvalidParams("n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidParams("p must lie in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0))
        throw InvalidParams("q must lie in [0, 1]");
}

namespace
{
bool pair_less(Arc const& a, Arc const& b)
{
    auto const ka = std::minmax(a.tail, a.head);
    auto const kb = std::minmax(b.tail, b.head);
    return ka < kb;
}
}  // namespace

OrientedGraph::OrientedGraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs))
{
    for (auto const& a : arcs_)
    {
        if (a.tail >= n_ || a.head >= n_)
            throw InvalidParams("arc endpoint out of range");
        if (a.tail == a.head)
            throw InvalidParams("self-loop in oriented graph");
    }
    std::sort(arcs_.begin(), arcs_.end(), pair_less);
    auto const dup = std::adjacent_find(arcs_.begin(), arcs_.end(), [](Arc const& a, Arc const& b) {
        return !pair_less(a, b) && !pair_less(b, a);
    });
    if (dup != arcs_.end())
        throw InvalidParams("more than one arc on a vertex pair");
}

bool SkewMatrix::is_skew_symmetric() const
{
    for (std::size_t i = 0; i < n_; ++i)
    {
        if ((*this)(i, i) != 0)
            return false;
        for (std::size_t j = 0; j < i; ++j)
        {
            if ((*this)(i, j) != -(*this)(j, i))
                return false;
        }
    }
    return true;
}

OrientedGraph sample_graph(GraphParams const& params, SeedSpec seed)
{
    std::size_t const n = params.n();
    double const p_fwd = params.p() * params.q();
    double const p_any = params.p();
    ReplicaStream const stream(seed);

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(p_any * n * (n - 1) / 2 * 1.05) + 16);

    std::array<std::uint64_t, 2> block{};
    std::uint64_t t = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j, ++t)
        {
            if ((t & 1u) == 0)
                block = stream.block_bits(t >> 1);
            double const u = ReplicaStream::to_unit(block[t & 1u]);
            if (u < p_fwd)
                arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
            else if (u < p_any)
                arcs.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
        }
    }
    return OrientedGraph(n, std::move(arcs), OrientedGraph::Trusted{});
}

SkewMatrix skew_adjacency(OrientedGraph const& g)
{
    SkewMatrix s(g.n());
    for (auto const& a : g.arcs())
        s.set_pair(a.tail, a.head, 1);
    return s;
}

void write_arcs(std::ostream& os, OrientedGraph const& g)
{
    os << "# skewspec arcs n=" << g.n() << '\n';
    for (auto const& a : g.arcs())
        os << (a.tail + 1) << '\t' << (a.head + 1) << '\n';
}

OrientedGraph read_arcs(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw ParseError("empty arc file");
    std::string const prefix = "# skewspec arcs n=";
    if (line.rfind(prefix, 0) != 0)
        throw ParseError("missing arc-file header");
    std::size_t n = 0;
    try
    {
        std::size_t used = 0;
        n = std::stoul(line.substr(prefix.size()), &used);
        if (prefix.size() + used != line.size())
            throw ParseError("trailing characters in header");
    }
    catch (std::logic_error const&)
    {
        throw ParseError("bad vertex count in arc-file header");
    }

    std::vector<Arc> arcs;
    std::size_t lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        ls.imbue(std::locale::classic());
        long long tail = 0, head = 0;
        std::string rest;
        if (!(ls >> tail >> head) || (ls >> rest) || tail < 1 || head < 1)
            throw ParseError("malformed arc on line " + std::to_string(lineno));
        arcs.push_back({static_cast<std::uint32_t>(tail - 1), static_cast<std::uint32_t>(head - 1)});
    }
    try
    {
        return OrientedGraph(n, std::move(arcs));
    }
    catch (InvalidParams const& e)
    {
        throw ParseError(e.what());
    }
}

}  // namespace skewspec
