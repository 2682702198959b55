#include "skewspec/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "skewspec/errors.hpp"
#include "skewspec/format.hpp"
#include "skewspec/semicircle.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
// Config
//---------------------------------------------------------------------------//
void EnsembleConfig::validate() const
{
    if (replicas < 1)
        throw InvalidConfig("replicas must be at least 1");
    if (bins < 1)
        throw InvalidConfig("bins must be at least 1");
    if (!(range_lo < range_hi) || !std::isfinite(range_lo) || !std::isfinite(range_hi))
        throw InvalidConfig("range must satisfy lo < hi");
    if (!(epsilon_weyl >= 0.0))
        throw InvalidConfig("epsilon_weyl must be non-negative");
    compute_context(params);
}

EnsembleConfig EnsembleConfig::from_json(nlohmann::json const& j)
{
    if (!j.is_object())
        throw InvalidConfig("ensemble config must be a JSON object");
    static char const* const known[] = {"n", "p", "q", "replicas", "seed", "bins",
                                        "range", "epsilon_weyl", "moments", "weyl_check"};
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
            throw InvalidConfig("unknown config key '" + it.key() + "'");
    }
    for (char const* key : {"n", "p", "q"})
    {
        if (!j.contains(key))
            throw InvalidConfig(std::string("config is missing '") + key + "'");
    }

    EnsembleConfig cfg;
    try
    {
        auto const n = j.at("n").get<std::int64_t>();
        if (n < 1)
            throw InvalidConfig("n must be at least 1");
        cfg.params = GraphParams(static_cast<std::size_t>(n), j.at("p").get<double>(), j.at("q").get<double>());
        if (j.contains("replicas"))
        {
            auto const r = j.at("replicas").get<std::int64_t>();
            if (r < 1)
                throw InvalidConfig("replicas must be at least 1");
            cfg.replicas = static_cast<std::size_t>(r);
        }
        if (j.contains("seed"))
            cfg.master_seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("bins"))
        {
            auto const b = j.at("bins").get<std::int64_t>();
            if (b < 1)
                throw InvalidConfig("bins must be at least 1");
            cfg.bins = static_cast<std::size_t>(b);
        }
        if (j.contains("range"))
        {
            auto const& r = j.at("range");
            if (!r.is_array() || r.size() != 2)
                throw InvalidConfig("range must be a two-element array");
            cfg.range_lo = r[0].get<double>();
            cfg.range_hi = r[1].get<double>();
        }
        if (j.contains("epsilon_weyl"))
            cfg.epsilon_weyl = j.at("epsilon_weyl").get<double>();
        if (j.contains("weyl_check"))
            cfg.weyl_check = j.at("weyl_check").get<bool>();
        if (j.contains("moments"))
        {
            cfg.moments.clear();
            for (auto const& k : j.at("moments"))
            {
                auto const v = k.get<std::int64_t>();
                if (v < 0)
                    throw InvalidConfig("moments must be non-negative integers");
                cfg.moments.push_back(static_cast<unsigned>(v));
            }
        }
    }
    catch (nlohmann::json::exception const& e)
    {
        throw InvalidConfig(std::string("bad config value: ") + e.what());
    }
    catch (InvalidParams const& e)
    {
        throw InvalidConfig(e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json EnsembleConfig::to_json() const
{
    nlohmann::ordered_json j;
    j["n"] = params.n();
    j["p"] = params.p();
    j["q"] = params.q();
    j["replicas"] = replicas;
    j["seed"] = master_seed;
    j["bins"] = bins;
    j["range"] = {range_lo, range_hi};
    j["epsilon_weyl"] = epsilon_weyl;
    j["weyl_check"] = weyl_check;
    j["moments"] = moments;
    return j;
}

//---------------------------------------------------------------------------//
// Histogram
//---------------------------------------------------------------------------//
Histogram::Histogram(std::size_t bins, double lo, double hi) : edges(bins + 1), counts(bins, 0), density(bins, 0.0)
{
    for (std::size_t b = 0; b <= bins; ++b)
        edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    edges.back() = hi;
}

void Histogram::add(double x)
{
    ++total;
    std::size_t const bins = counts.size();
    double const lo = edges.front(), hi = edges.back();
    if (x < lo)
    {
        ++below;
        return;
    }
    if (x > hi)
    {
        ++above;
        return;
    }
    auto b = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
    b = std::min(b, bins - 1);
    while (b > 0 && x < edges[b])
        --b;
    while (b + 1 < bins && x >= edges[b + 1])
        ++b;
    ++counts[b];
}

void Histogram::finalize()
{
    for (std::size_t b = 0; b < counts.size(); ++b)
    {
        density[b] = total == 0 ? 0.0
                                : static_cast<double>(counts[b]) / (static_cast<double>(total) * width(b));
    }
}

void write_histogram_csv(std::ostream& os, Histogram const& h)
{
    os << "bin_left,bin_right,count,density\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
    {
        os << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << ','
           << format_double(h.density[b]) << '\n';
    }
}

//---------------------------------------------------------------------------//
// Report
//---------------------------------------------------------------------------//
nlohmann::ordered_json EnsembleReport::to_json(bool include_timings) const
{
    nlohmann::ordered_json j;
    j["config"] = config.to_json();
    j["context"] = {{"p", context.p()}, {"q", context.q()}, {"c", context.c()}, {"r", context.r()}};

    nlohmann::ordered_json hist;
    hist["edges"] = histogram.edges;
    hist["counts"] = histogram.counts;
    hist["density"] = histogram.density;
    hist["below"] = histogram.below;
    hist["above"] = histogram.above;
    hist["total"] = histogram.total;
    j["histogram"] = hist;

    j["pooled_ks"] = pooled_ks;
    nlohmann::ordered_json ks = nlohmann::ordered_json::array();
    nlohmann::ordered_json radius = nlohmann::ordered_json::array();
    for (auto const& r : replicas)
    {
        ks.push_back(r.ks);
        radius.push_back(r.radius);
    }
    j["replica_ks"] = ks;
    j["replica_radius"] = radius;

    nlohmann::ordered_json moms = nlohmann::ordered_json::array();
    for (std::size_t idx = 0; idx < moments.size(); ++idx)
    {
        auto const& m = moments[idx];
        nlohmann::ordered_json per = nlohmann::ordered_json::array();
        for (auto const& r : replicas)
            per.push_back(r.moments[idx]);
        moms.push_back({{"k", m.k}, {"target", m.target}, {"pooled", m.pooled}, {"std_error", m.std_error},
                        {"per_replica", per}});
    }
    j["moments"] = moms;

    if (weyl_pass_rate)
    {
        nlohmann::ordered_json viol = nlohmann::ordered_json::array();
        for (auto const& r : replicas)
            viol.push_back(r.weyl_violations.value_or(0));
        j["weyl"] = {{"epsilon", config.epsilon_weyl}, {"pass_rate", *weyl_pass_rate}, {"violations", viol}};
    }
    else
    {
        j["weyl"] = nullptr;
    }

    if (include_timings)
    {
        nlohmann::ordered_json secs = nlohmann::ordered_json::array();
        for (auto const& r : replicas)
            secs.push_back(r.seconds);
        j["timings"] = {{"wall_seconds", wall_seconds}, {"replica_seconds", secs}};
    }
    return j;
}

//---------------------------------------------------------------------------//
// Monte Carlo driver
//---------------------------------------------------------------------------//
namespace
{
struct ReplicaOutput
{
    std::vector<double> scaled;  // ascending eigenvalues of n^{-1/2} X
    ReplicaSummary summary;
};

ReplicaOutput run_replica(EnsembleConfig const& cfg, NormalizationContext const& ctx, std::size_t idx)
{
    using clock = std::chrono::steady_clock;
    auto const start = clock::now();

    std::size_t const n = cfg.params.n();
    auto const s = skew_adjacency(sample_graph(cfg.params, SeedSpec{cfg.master_seed, idx}));
    auto const spec = eig_skew(shifted_skew_matrix(s, ctx));
    double const scale = ctx.r() * std::sqrt(static_cast<double>(n));
    auto const scaled = spec.scaled(1.0 / scale);

    ReplicaOutput out;
    out.scaled.assign(scaled.ascending().begin(), scaled.ascending().end());
    ESD const e(out.scaled);
    out.summary.ks = semicircle::ks_distance(e);
    out.summary.radius = spectral_radius(scaled);
    for (unsigned k : cfg.moments)
        out.summary.moments.push_back(semicircle::empirical_moment(e, k));

    if (cfg.weyl_check)
    {
        auto const spec_s = (ctx.c() == 0.0) ? spec : eig_skew(to_dense(s));
        out.summary.weyl_violations = weyl_bounds(spec_s, ctx, n, cfg.epsilon_weyl).violations;
    }
    out.summary.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return out;
}
}  // namespace

Spectrum replica_spectrum(GraphParams const& params, SeedSpec seed)
{
    auto const ctx = compute_context(params);
    auto const s = skew_adjacency(sample_graph(params, seed));
    double const scale = ctx.r() * std::sqrt(static_cast<double>(params.n()));
    return eig_skew(shifted_skew_matrix(s, ctx)).scaled(1.0 / scale);
}

std::size_t default_worker_count()
{
    if (char const* env = std::getenv("SKEWSPEC_THREADS"))
    {
        char* end = nullptr;
        long const v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleReport run_ensemble(EnsembleConfig const& cfg, std::size_t workers)
{
    cfg.validate();
    auto const ctx = compute_context(cfg.params);
    auto const wall_start = std::chrono::steady_clock::now();

    std::size_t const replicas = cfg.replicas;
    if (workers == 0)
        workers = default_worker_count();
    workers = std::min(workers, replicas);

    std::vector<ReplicaOutput> outputs(replicas);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;)
        {
            std::size_t const idx = next.fetch_add(1);
            if (idx >= replicas)
                return;
            try
            {
                outputs[idx] = run_replica(cfg, ctx, idx);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = replicas;
                return;
            }
        }
    };
    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    // Ordered merge
    EnsembleReport report{cfg, ctx, Histogram(cfg.bins, cfg.range_lo, cfg.range_hi), {}, 0.0, {}, std::nullopt, 0.0};
    std::vector<double> pooled;
    pooled.reserve(replicas * cfg.params.n());
    report.replicas.reserve(replicas);
    std::size_t weyl_passes = 0;
    for (auto& out : outputs)
    {
        for (double x : out.scaled)
            report.histogram.add(x);
        pooled.insert(pooled.end(), out.scaled.begin(), out.scaled.end());
        if (out.summary.weyl_violations && *out.summary.weyl_violations == 0)
            ++weyl_passes;
        report.replicas.push_back(std::move(out.summary));
    }
    report.histogram.finalize();
    report.pooled_ks = semicircle::ks_distance(ESD(std::move(pooled)));

    double const rcount = static_cast<double>(replicas);
    for (std::size_t idx = 0; idx < cfg.moments.size(); ++idx)
    {
        MomentSummary m;
        m.k = cfg.moments[idx];
        m.target = semicircle::moment(m.k);
        double sum = 0.0;
        for (auto const& r : report.replicas)
            sum += r.moments[idx];
        m.pooled = sum / rcount;
        if (replicas > 1)
        {
            double ss = 0.0;
            for (auto const& r : report.replicas)
                ss += (r.moments[idx] - m.pooled) * (r.moments[idx] - m.pooled);
            m.std_error = std::sqrt(ss / (rcount - 1.0) / rcount);
        }
        report.moments.push_back(m);
    }
    if (cfg.weyl_check)
        report.weyl_pass_rate = static_cast<double>(weyl_passes) / rcount;

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return report;
}

}  // namespace skewspec
