#include "skewspec/walk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "skewspec/ensemble.hpp"
#include "skewspec/errors.hpp"
#include "skewspec/semicircle.hpp"

namespace skewspec
{
namespace
{
using cd = std::complex<double>;

// Neumaier-compensated accumulator
class CompensatedSum
{
  public:
    void add(double x)
    {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum
{
  public:
    void add(cd z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cd value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_, im_;
};

struct DisjointSets
{
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
    std::vector<std::size_t> parent;
};

// (-i)^k
cd minus_i_power(unsigned k)
{
    switch (k % 4)
    {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

double checked_real(cd z, char const* what)
{
    if (std::abs(z.imag()) > 1e-12)
        throw std::logic_error(std::string(what) + ": imaginary part exceeds 1e-12");
    return z.real();
}

void check_tiny_bounds(GraphParams const& params, unsigned k)
{
    if (params.n() > 4 || k > 8 || k < 1)
        throw EnumerationBoundExceeded("exact trace moments need n <= 4 and 1 <= k <= 8");
}
}  // namespace

char const* to_string(WalkCase c)
{
    switch (c)
    {
        case WalkCase::A1: return "A1";
        case WalkCase::A2: return "A2";
        case WalkCase::B1: return "B1";
        case WalkCase::B2: return "B2";
        case WalkCase::B3: return "B3";
    }
    return "?";
}

//---------------------------------------------------------------------------//
WalkClassification classify_walk(std::span<std::uint32_t const> walk)
{
    std::size_t const k = walk.size();
    if (k == 0)
        throw MalformedWalk("empty walk");

    WalkClassification out;
    out.length = k;
    for (std::size_t s = 0; s < k; ++s)
    {
        std::uint32_t const a = walk[s];
        std::uint32_t const b = walk[(s + 1) % k];
        if (a == b)
            throw MalformedWalk("walk repeats vertex " + std::to_string(a) + " at step "
                                + std::to_string(s + 1));
        std::uint32_t const lo = std::min(a, b), hi = std::max(a, b);
        auto it = std::find_if(out.edges.begin(), out.edges.end(),
                               [&](EdgeCount const& e) { return e.low == lo && e.high == hi; });
        if (it == out.edges.end())
        {
            out.edges.push_back({lo, hi, 0, 0});
            it = out.edges.end() - 1;
        }
        if (a < b)
            ++it->forward;
        else
            ++it->backward;
    }
    std::sort(out.edges.begin(), out.edges.end(), [](EdgeCount const& x, EdgeCount const& y) {
        return std::tie(x.low, x.high) < std::tie(y.low, y.high);
    });

    std::vector<std::uint32_t> verts(walk.begin(), walk.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    out.distinct_vertices = verts.size();

    for (auto const& e : out.edges)
    {
        if (e.total() % 2 == 1)
            out.omega.push_back(e);
    }

    std::size_t const m = out.distinct_vertices;
    if (k % 2 == 1)
    {
        bool const has_single = std::any_of(out.omega.begin(), out.omega.end(),
                                            [](EdgeCount const& e) { return e.total() == 1; });
        out.label = has_single ? WalkCase::A1 : WalkCase::A2;
    }
    else if (!out.omega.empty())
    {
        out.label = WalkCase::B1;
    }
    else if (m <= k / 2)
    {
        out.label = WalkCase::B2;
    }
    else if (m == k / 2 + 1)
    {
        out.label = WalkCase::B3;
    }
    else
    {
        throw std::logic_error("even closed walk with all multiplicities even visits more than k/2+1 vertices");
    }

    // Tree traversal: once in each direction per edge, and acyclic edge set
    bool once_each = std::all_of(out.edges.begin(), out.edges.end(),
                                 [](EdgeCount const& e) { return e.forward == 1 && e.backward == 1; });
    if (once_each && out.edges.size() + 1 == m)
    {
        auto index_of = [&](std::uint32_t v) {
            return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
        };
        DisjointSets ds(m);
        bool acyclic = true;
        for (auto const& e : out.edges)
            acyclic = ds.unite(index_of(e.low), index_of(e.high)) && acyclic;
        out.tree_traversal = acyclic;
    }
    return out;
}

//---------------------------------------------------------------------------//
namespace
{
struct TreeWalkSearch
{
    unsigned t;
    std::size_t nv;
    std::size_t len;
    std::vector<std::uint32_t> walk;
    std::vector<char> used;  // arc (a, b) at a * nv + b
    std::vector<unsigned> visited;
    std::uint64_t count = 0;

    void extend()
    {
        std::size_t const pos = walk.size();
        std::uint32_t const prev = walk.back();
        for (std::uint32_t v = 0; v < nv; ++v)
        {
            if (v == prev || used[prev * nv + v])
                continue;
            // A fresh edge into a visited vertex closes a cycle
            bool const fresh = !visited[v];
            if (!fresh && !used[v * nv + prev])
                continue;
            used[prev * nv + v] = 1;
            visited[v] += 1;
            walk.push_back(v);
            if (pos + 1 == len)
            {
                if (v != walk.front() && !used[v * nv + walk.front()])
                    accept();
            }
            else
            {
                extend();
            }
            walk.pop_back();
            visited[v] -= 1;
            used[prev * nv + v] = 0;
        }
    }

    void accept()
    {
        auto const cls = classify_walk(walk);
        if (cls.distinct_vertices == nv && cls.label == WalkCase::B3 && cls.tree_traversal)
            ++count;
    }
};
}  // namespace

std::uint64_t count_tree_walks(unsigned t)
{
    if (t == 0 || t > 6)
        throw EnumerationBoundExceeded("tree-walk enumeration supports 1 <= t <= 6");
    TreeWalkSearch search{t, t + 1u, 2u * t, {}, std::vector<char>((t + 1) * (t + 1), 0),
                          std::vector<unsigned>(t + 1, 0)};
    for (std::uint32_t start = 0; start < search.nv; ++start)
    {
        search.walk.assign(1, start);
        search.visited[start] = 1;
        search.extend();
        search.visited[start] = 0;
    }
    return search.count;
}

std::uint64_t tree_walk_formula(unsigned t)
{
    std::uint64_t fact = 1;
    for (unsigned j = 2; j <= t + 1; ++j)
        fact *= j;
    return semicircle::catalan(t) * fact;
}

//---------------------------------------------------------------------------//
std::complex<double> exact_entry_moment(NormalizationContext const& ctx, unsigned k)
{
    double const p = ctx.p(), q = ctx.q(), c = ctx.c();
    double const probs[3] = {p * q, p * (1.0 - q), 1.0 - p};
    double const values[3] = {1.0 + c, -1.0 + c, c};
    CompensatedSum acc;
    for (int s = 0; s < 3; ++s)
        acc.add(probs[s] * std::pow(values[s], static_cast<double>(k)));
    double rk = std::pow(ctx.r_squared(), static_cast<double>(k / 2));
    if (k % 2 == 1)
        rk *= ctx.r();
    return minus_i_power(k) * (acc.value() / rk);
}

double trace_moment_exact_tiny(GraphParams const& params, unsigned k)
{
    check_tiny_bounds(params, k);
    auto const ctx = compute_context(params);
    std::size_t const n = params.n();
    double const p = params.p(), q = params.q(), c = ctx.c(), r = ctx.r();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::size_t configs = 1;
    for (std::size_t t = 0; t < pairs.size(); ++t)
        configs *= 3;

    double const state_prob[3] = {p * q, p * (1.0 - q), 1.0 - p};
    double const state_value[3] = {1.0, -1.0, 0.0};

    CompensatedComplexSum total;
    std::vector<cd> x(n * n), pw(n * n), tmp(n * n);
    for (std::size_t cfg = 0; cfg < configs; ++cfg)
    {
        double weight = 1.0;
        std::fill(x.begin(), x.end(), cd{});
        std::size_t code = cfg;
        for (auto const& [i, j] : pairs)
        {
            std::size_t const st = code % 3;
            code /= 3;
            weight *= state_prob[st];
            cd const xij{0.0, -(state_value[st] + c) / r};
            x[i * n + j] = xij;
            x[j * n + i] = -xij;
        }
        if (weight == 0.0)
            continue;
        pw = x;
        for (unsigned step = 1; step < k; ++step)
        {
            std::fill(tmp.begin(), tmp.end(), cd{});
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    for (std::size_t j = 0; j < n; ++j)
                        tmp[i * n + j] += pw[i * n + l] * x[l * n + j];
            pw.swap(tmp);
        }
        cd tr{};
        for (std::size_t i = 0; i < n; ++i)
            tr += pw[i * n + i];
        total.add(weight * tr);
    }
    double const norm = std::pow(static_cast<double>(n), 1.0 + 0.5 * k);
    return checked_real(total.value() / norm, "exhaustive trace moment");
}

double trace_moment_walk_sum(GraphParams const& params, unsigned k)
{
    check_tiny_bounds(params, k);
    auto const ctx = compute_context(params);
    std::size_t const n = params.n();

    std::vector<cd> entry_moment(k + 1);
    for (unsigned j = 1; j <= k; ++j)
        entry_moment[j] = exact_entry_moment(ctx, j);

    CompensatedComplexSum total;
    std::vector<std::uint32_t> walk(k, 0);
    std::size_t tuples = 1;
    for (unsigned j = 0; j < k; ++j)
        tuples *= n;
    for (std::size_t code = 0; code < tuples; ++code)
    {
        std::size_t rest = code;
        for (unsigned j = 0; j < k; ++j)
        {
            walk[j] = static_cast<std::uint32_t>(rest % n);
            rest /= n;
        }
        bool valid = true;
        for (unsigned j = 0; j < k && valid; ++j)
            valid = walk[j] != walk[(j + 1) % k];
        if (!valid)
            continue;
        auto const cls = classify_walk(walk);
        cd term{1.0, 0.0};
        for (auto const& e : cls.edges)
        {
            term *= entry_moment[e.total()];
            if (e.backward % 2 == 1)
                term = -term;
        }
        total.add(term);
    }
    double const norm = std::pow(static_cast<double>(n), 1.0 + 0.5 * k);
    return checked_real(total.value() / norm, "walk-sum trace moment");
}

Rational trace_moment_exact_rational(std::size_t n, Rational const& p, Rational const& q, unsigned k)
{
    if (p < 0 || p > 1 || q < 0 || q > 1)
        throw InvalidParams("p and q must lie in [0, 1]");
    if (n < 1 || n > 4 || k < 1 || k > 8)
        throw EnumerationBoundExceeded("exact trace moments need n <= 4 and 1 <= k <= 8");
    Rational const c = p * (1 - 2 * q);
    Rational const r2 = (1 + c) * (1 + c) * p * q + (1 - c) * (1 - c) * p * (1 - q);
    if (r2 == 0)
        throw DegenerateNormalization("r(p, q) = 0: normalized matrix undefined");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::size_t configs = 1;
    for (std::size_t t = 0; t < pairs.size(); ++t)
        configs *= 3;

    Rational const state_prob[3] = {p * q, p * (1 - q), 1 - p};
    int const state_value[3] = {1, -1, 0};

    // E Trace(M^k), M = S + cY
    Rational expect = 0;
    std::vector<Rational> m(n * n), pw(n * n), tmp(n * n);
    for (std::size_t cfg = 0; cfg < configs; ++cfg)
    {
        Rational weight = 1;
        std::fill(m.begin(), m.end(), Rational(0));
        std::size_t code = cfg;
        for (auto const& [i, j] : pairs)
        {
            std::size_t const st = code % 3;
            code /= 3;
            weight *= state_prob[st];
            Rational const v = state_value[st] + c;
            m[i * n + j] = v;
            m[j * n + i] = -v;
        }
        if (weight == 0)
            continue;
        pw = m;
        for (unsigned step = 1; step < k; ++step)
        {
            std::fill(tmp.begin(), tmp.end(), Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    for (std::size_t j = 0; j < n; ++j)
                        tmp[i * n + j] += pw[i * n + l] * m[l * n + j];
            pw.swap(tmp);
        }
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += pw[i * n + i];
        expect += weight * tr;
    }

    if (k % 2 == 1)
    {
        if (expect != 0)
            throw std::logic_error("odd power of a skew matrix has nonzero trace");
        return Rational(0);
    }
    // X^k = (-i)^k M^k / r^k with k = 2h: (-1)^h M^k / (r^2)^h
    unsigned const h = k / 2;
    Rational denom = 1;
    for (unsigned j = 0; j < h; ++j)
        denom *= r2 * static_cast<long long>(n);
    denom *= static_cast<long long>(n);
    Rational result = expect / denom;
    return (h % 2 == 1) ? Rational(-result) : result;
}

//---------------------------------------------------------------------------//
MonteCarloEstimate trace_moment_mc(GraphParams const& params, unsigned k, std::size_t replicas,
                                   std::uint64_t seed)
{
    if (replicas < 2)
        throw InvalidParams("trace_moment_mc needs at least two replicas");
    compute_context(params);  // fail fast on degenerate normalization

    CompensatedSum sum, sumsq;
    std::vector<double> values(replicas);
    for (std::size_t r = 0; r < replicas; ++r)
    {
        auto const spec = replica_spectrum(params, SeedSpec{seed, r});
        values[r] = semicircle::empirical_moment(ESD(std::vector<double>(spec.ascending().begin(),
                                                                         spec.ascending().end())),
                                                 k);
        sum.add(values[r]);
    }
    double const mean = sum.value() / static_cast<double>(replicas);
    for (double v : values)
        sumsq.add((v - mean) * (v - mean));
    double const var = sumsq.value() / static_cast<double>(replicas - 1);
    return {mean, std::sqrt(var / static_cast<double>(replicas)), replicas};
}

}  // namespace skewspec
