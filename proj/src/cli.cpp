#include "skewspec/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "skewspec/ensemble.hpp"
#include "skewspec/errors.hpp"
#include "skewspec/format.hpp"
#include "skewspec/graph_model.hpp"
#include "skewspec/normalization.hpp"
#include "skewspec/semicircle.hpp"
#include "skewspec/spectral.hpp"
#include "skewspec/walk_oracle.hpp"

namespace skewspec
{
namespace
{
using ojson = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// Output helpers
//---------------------------------------------------------------------------//
class OutputTarget
{
  public:
    OutputTarget(std::string const& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty() && path != "-")
        {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw std::runtime_error("cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

class CheckReport
{
  public:
    explicit CheckReport(std::string suite) : suite_(std::move(suite)) {}

    void add(std::string name, ojson expected, ojson actual, bool pass)
    {
        all_pass_ = all_pass_ && pass;
        checks_.push_back({{"check", std::move(name)},
                           {"expected", std::move(expected)},
                           {"actual", std::move(actual)},
                           {"pass", pass}});
    }
    void add_close(std::string name, double expected, double actual, double tol)
    {
        add(std::move(name), expected, actual, std::abs(expected - actual) <= tol);
    }

    bool all_pass() const { return all_pass_; }

    ojson to_json() const
    {
        ojson j;
        j["suite"] = suite_;
        j["pass"] = all_pass_;
        j["checks"] = checks_;
        return j;
    }

  private:
    std::string suite_;
    ojson checks_ = ojson::array();
    bool all_pass_ = true;
};

std::string fmt(double v) { return format_double(v); }

//---------------------------------------------------------------------------//
// verify suites
//---------------------------------------------------------------------------//
struct VerifyOptions
{
    std::string suite;
    unsigned t_max = 4;
    std::optional<std::size_t> n;
    std::optional<unsigned> k;
    std::optional<double> p;
    std::optional<double> q;
};

void verify_moments(VerifyOptions const& opt, CheckReport& rep)
{
    unsigned const kmax = opt.k.value_or(10);
    for (unsigned k = 0; k <= kmax; ++k)
    {
        rep.add_close("semicircle_moment_vs_quadrature k=" + std::to_string(k), semicircle::quadrature_moment(k),
                      semicircle::moment(k), 1e-9);
    }
    for (unsigned t = 0; t <= 10; ++t)
    {
        auto const lhs = semicircle::catalan(t + 1) * (t + 2);
        auto const rhs = semicircle::catalan(t) * 2 * (2 * t + 1);
        rep.add("catalan_recurrence t=" + std::to_string(t), rhs, lhs, lhs == rhs);
    }

    double const p = opt.p.value_or(0.1);
    double const q = opt.q.value_or(0.5);
    auto const ctx = compute_context(p, q);
    auto const dist = entry_distribution(ctx);
    rep.add_close("entry_mean_real", 0.0, dist.mean().real(), 1e-14);
    rep.add_close("entry_mean_imag", 0.0, dist.mean().imag(), 1e-14);
    double const m2 = 1.0 + ctx.c() * ctx.c() * (1.0 - p) / ctx.r_squared();
    rep.add_close("entry_second_abs_moment", m2, dist.second_abs_moment(), 1e-12 * m2);
    rep.add_close("entry_moment_k2_equals_minus_second_abs_moment", -dist.second_abs_moment(),
                  exact_entry_moment(ctx, 2).real(), 1e-12 * m2);

    for (unsigned k = 1; k <= kmax; ++k)
    {
        auto const em = exact_entry_moment(ctx, k);
        if (q == 0.5)
        {
            // s symmetric, c = 0: E x^k = (-i)^k p / p^{k/2}
            double expected = 0.0;
            if (k % 2 == 0)
                expected = ((k / 2) % 2 == 0 ? 1.0 : -1.0) / std::pow(p, static_cast<double>(k) / 2.0 - 1.0);
            double const tol = 1e-12 * std::max(1.0, std::abs(expected));
            rep.add("entry_moment_half_orientation k=" + std::to_string(k), expected,
                    ojson::array({em.real(), em.imag()}),
                    std::abs(em.real() - expected) <= tol && std::abs(em.imag()) <= tol);
        }
        double const bound = std::pow(1.0 / ctx.r(), static_cast<double>(k) - 2.0)
                             * std::pow(1.0 + std::abs(ctx.c()), static_cast<double>(k));
        rep.add("entry_moment_magnitude_bound k=" + std::to_string(k), bound, std::abs(em),
                std::abs(em) <= bound * (1.0 + 1e-12));
    }
}

void verify_walks(VerifyOptions const& opt, CheckReport& rep)
{
    if (opt.t_max < 1 || opt.t_max > 6)
        throw EnumerationBoundExceeded("--t-max must lie in [1, 6]");
    for (unsigned t = 1; t <= opt.t_max; ++t)
    {
        auto const counted = count_tree_walks(t);
        auto const formula = tree_walk_formula(t);
        rep.add("tree_walk_count t=" + std::to_string(t), formula, counted, counted == formula);
    }

    // Every walk on <= 4 vertices of length <= 6 gets one label, and
    // A1/B1 walks have zero expectation under independent pairs.
    double const p = opt.p.value_or(0.3);
    double const q = opt.q.value_or(0.2);
    auto const ctx = compute_context(p, q);
    std::vector<std::complex<double>> em(7);
    for (unsigned j = 1; j <= 6; ++j)
        em[j] = exact_entry_moment(ctx, j);
    std::size_t walks = 0, labelled = 0;
    double worst_zero = 0.0;
    unsigned const kmax = std::min(opt.k.value_or(6), 6u);
    for (unsigned k = 2; k <= kmax; ++k)
    {
        std::size_t tuples = 1;
        for (unsigned j = 0; j < k; ++j)
            tuples *= 4;
        std::vector<std::uint32_t> w(k);
        for (std::size_t code = 0; code < tuples; ++code)
        {
            std::size_t rest = code;
            bool valid = true;
            for (unsigned j = 0; j < k; ++j)
            {
                w[j] = static_cast<std::uint32_t>(rest % 4);
                rest /= 4;
            }
            for (unsigned j = 0; j < k && valid; ++j)
                valid = w[j] != w[(j + 1) % k];
            if (!valid)
                continue;
            ++walks;
            auto const cls = classify_walk(w);
            bool const odd = k % 2 == 1;
            bool const label_ok = odd ? (cls.label == WalkCase::A1 || cls.label == WalkCase::A2)
                                      : (cls.label == WalkCase::B1 || cls.label == WalkCase::B2
                                         || cls.label == WalkCase::B3);
            if (label_ok)
                ++labelled;
            if (cls.label == WalkCase::A1 || cls.label == WalkCase::B1)
            {
                std::complex<double> term{1.0, 0.0};
                for (auto const& e : cls.edges)
                    term *= em[e.total()] * ((e.backward % 2 == 1) ? -1.0 : 1.0);
                worst_zero = std::max(worst_zero, std::abs(term));
            }
        }
    }
    rep.add("walk_labels_exhaustive", static_cast<std::uint64_t>(walks), static_cast<std::uint64_t>(labelled),
            walks == labelled);
    rep.add_close("odd_edge_walks_vanish", 0.0, worst_zero, 1e-12);
}

void verify_trace(VerifyOptions const& opt, CheckReport& rep)
{
    std::vector<std::size_t> ns = opt.n ? std::vector<std::size_t>{*opt.n} : std::vector<std::size_t>{2, 3, 4};
    std::vector<unsigned> ks;
    if (opt.k)
        ks = {*opt.k};
    else
        ks = {1, 2, 3, 4, 5, 6};
    std::vector<double> ps = opt.p ? std::vector<double>{*opt.p} : std::vector<double>{0.3, 0.7};
    std::vector<double> qs = opt.q ? std::vector<double>{*opt.q} : std::vector<double>{0.2, 0.5, 0.8};

    for (std::size_t n : ns)
    {
        for (unsigned k : ks)
        {
            for (double p : ps)
            {
                for (double q : qs)
                {
                    GraphParams const gp(n, p, q);
                    std::string const tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + fmt(p)
                                            + " q=" + fmt(q);
                    double const exhaustive = trace_moment_exact_tiny(gp, k);
                    double const walks = trace_moment_walk_sum(gp, k);
                    rep.add_close("exhaustive_vs_walk_sum " + tag, walks, exhaustive, 1e-12);
                    double const exact = trace_moment_exact_rational(n, Rational(p), Rational(q), k)
                                             .convert_to<double>();
                    rep.add_close("exhaustive_vs_rational " + tag, exact, exhaustive,
                                  1e-12 * std::max(1.0, std::abs(exact)));
                    if (k == 2 && q == 0.5)
                    {
                        double const dn = static_cast<double>(n);
                        rep.add_close("half_orientation_second_moment " + tag, (dn - 1.0) / dn, exhaustive, 1e-12);
                    }
                }
            }
        }
    }
}

//---------------------------------------------------------------------------//
std::unique_ptr<std::ifstream> open_input(std::string const& path)
{
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in)
        throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

}  // namespace

//---------------------------------------------------------------------------//
int run_cli(std::vector<std::string> const& argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra of randomly oriented Erdos-Renyi graphs", "skewspec"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    // sample
    std::size_t n = 0;
    double p = 0.0, q = 0.0;
    std::uint64_t seed = 0, replica = 0;
    std::string out_path;
    auto* sample = app.add_subcommand("sample", "Sample a randomly oriented graph and write its arc list");
    sample->add_option("--n", n, "Number of vertices")->required()->check(CLI::PositiveNumber);
    sample->add_option("--p", p, "Edge probability in [0,1]")->required()->check(CLI::Range(0.0, 1.0));
    sample->add_option("--q", q, "Probability of orienting {i,j}, i<j, as i->j")->required()->check(CLI::Range(0.0, 1.0));
    sample->add_option("--seed", seed, "Master seed (default 0)");
    sample->add_option("--replica", replica, "Replica index of the random stream (default 0)");
    sample->add_option("--out", out_path, "Output file (default stdout)");

    // spectrum
    std::string in_path;
    bool scaled = false;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of -i(S + cY), optionally scaled by 1/(r sqrt n)");
    auto* sp_in = spectrum->add_option("--in", in_path, "Arc-list file to read instead of sampling");
    auto* sp_n = spectrum->add_option("--n", n, "Number of vertices")->check(CLI::PositiveNumber);
    auto* sp_p = spectrum->add_option("--p", p, "Edge probability (sets c and r)")->check(CLI::Range(0.0, 1.0));
    auto* sp_q = spectrum->add_option("--q", q, "Orientation probability (sets c and r)")->check(CLI::Range(0.0, 1.0));
    spectrum->add_option("--seed", seed, "Master seed (default 0)");
    spectrum->add_option("--replica", replica, "Replica index (default 0)");
    spectrum->add_flag("--scaled", scaled, "Divide eigenvalues by r sqrt(n), giving the spectrum of n^{-1/2} X");
    spectrum->add_option("--out", out_path, "Output CSV (default stdout)");
    sp_in->excludes(sp_n);

    // ensemble
    std::string config_path, out_dir = ".";
    std::size_t threads = 0;
    auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble: histogram CSV and JSON report");
    ensemble->add_option("--config", config_path, "JSON config file")->required();
    ensemble->add_option("--out-dir", out_dir, "Directory for histogram.csv, report.json, timings.json (default .)");
    ensemble->add_option("--threads", threads, "Worker count (default SKEWSPEC_THREADS or hardware)");

    // verify
    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Exact oracle checks; exit status 1 if any check fails");
    verify->add_option("--suite", vopt.suite, "moments | walks | trace")
        ->required()
        ->check(CLI::IsMember({"moments", "walks", "trace"}));
    verify->add_option("--t-max", vopt.t_max, "Largest t for tree-walk counts, 1..6 (walks, default 4)");
    verify->add_option("--n", vopt.n, "Only this n (trace; default 2,3,4)");
    verify->add_option("--k", vopt.k, "Moment order: max k (moments, walks) or only this k (trace)");
    verify->add_option("--p", vopt.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--q", vopt.q, "Orientation probability")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--out", out_path, "Output JSON (default stdout)");

    // check-bounds
    double epsilon = 0.3;
    std::string form = "weyl";
    auto* bounds = app.add_subcommand("check-bounds", "Weyl sandwich check on the eigenvalues of -iS");
    bounds->add_option("--n", n, "Number of vertices")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--p", p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--q", q, "Orientation probability")->required()->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--seed", seed, "Master seed (default 0)");
    bounds->add_option("--replica", replica, "Replica index (default 0)");
    bounds->add_option("--epsilon", epsilon, "Slack added to the +-2 edge (default 0.3)")->check(CLI::NonNegativeNumber);
    bounds->add_option("--form", form, "weyl (default) or published")->check(CLI::IsMember({"weyl", "published"}));
    bounds->add_option("--out", out_path, "Output JSON (default stdout)");

    std::vector<char const*> cargv;
    for (auto const& a : argv)
        cargv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error: " << e.what() << "\n\n";
        CLI::App const* failing = &app;
        for (auto* sub : app.get_subcommands())
            failing = sub;
        err << failing->help();
        return exit_usage;
    }

    try
    {
        if (sample->parsed())
        {
            GraphParams const gp(n, p, q);
            OutputTarget target(out_path, out);
            write_arcs(target.stream(), sample_graph(gp, SeedSpec{seed, replica}));
            return exit_ok;
        }
        if (spectrum->parsed())
        {
            bool const have_pq = sp_p->count() > 0 && sp_q->count() > 0;
            if ((sp_p->count() > 0) != (sp_q->count() > 0))
                throw InvalidParams("--p and --q must be given together");
            OrientedGraph g;
            if (sp_in->count() > 0)
            {
                auto in = open_input(in_path);
                g = read_arcs(*in);
            }
            else
            {
                if (sp_n->count() == 0 || !have_pq)
                    throw InvalidParams("spectrum needs --in FILE or all of --n, --p, --q");
                g = sample_graph(GraphParams(n, p, q), SeedSpec{seed, replica});
            }
            if (scaled && !have_pq)
                throw InvalidParams("--scaled needs --p and --q to compute r");
            std::optional<NormalizationContext> ctx;
            if (have_pq)
                ctx = compute_context(p, q);
            auto const s = skew_adjacency(g);
            auto spec = ctx ? eig_skew(shifted_skew_matrix(s, *ctx)) : eig_skew(to_dense(s));
            if (scaled)
                spec = spec.scaled(1.0 / (ctx->r() * std::sqrt(static_cast<double>(g.n()))));
            OutputTarget target(out_path, out);
            write_spectrum_csv(target.stream(), spec);
            return exit_ok;
        }
        if (ensemble->parsed())
        {
            auto in = open_input(config_path);
            nlohmann::json j;
            try
            {
                j = nlohmann::json::parse(*in);
            }
            catch (nlohmann::json::parse_error const& e)
            {
                throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
            }
            auto const cfg = EnsembleConfig::from_json(j);
            auto const report = run_ensemble(cfg, threads);

            std::filesystem::path const dir(out_dir);
            std::filesystem::create_directories(dir);
            {
                std::ofstream hist(dir / "histogram.csv", std::ios::binary);
                write_histogram_csv(hist, report.histogram);
            }
            {
                std::ofstream rep(dir / "report.json", std::ios::binary);
                rep << dump_json(report.to_json(false)) << '\n';
            }
            {
                ojson timings;
                timings["wall_seconds"] = report.wall_seconds;
                ojson secs = ojson::array();
                for (auto const& r : report.replicas)
                    secs.push_back(r.seconds);
                timings["replica_seconds"] = secs;
                std::ofstream tf(dir / "timings.json", std::ios::binary);
                tf << dump_json(timings) << '\n';
            }
            out << "replicas " << cfg.replicas << " n " << cfg.params.n() << " pooled_ks "
                << fmt(report.pooled_ks);
            for (auto const& m : report.moments)
                out << " m" << m.k << ' ' << fmt(m.pooled);
            if (report.weyl_pass_rate)
                out << " weyl_pass_rate " << fmt(*report.weyl_pass_rate);
            out << '\n';
            return exit_ok;
        }
        if (verify->parsed())
        {
            CheckReport rep(vopt.suite);
            if (vopt.suite == "moments")
                verify_moments(vopt, rep);
            else if (vopt.suite == "walks")
                verify_walks(vopt, rep);
            else
                verify_trace(vopt, rep);
            OutputTarget target(out_path, out);
            target.stream() << dump_json(rep.to_json()) << '\n';
            return rep.all_pass() ? exit_ok : exit_verification_failed;
        }
        if (bounds->parsed())
        {
            GraphParams const gp(n, p, q);
            auto const ctx = compute_context(gp);
            auto const s = skew_adjacency(sample_graph(gp, SeedSpec{seed, replica}));
            auto const spec = eig_skew(to_dense(s));
            auto const wf = form == "published" ? WeylForm::published : WeylForm::weyl;
            auto const report = weyl_bounds(spec, ctx, n, epsilon, wf);

            ojson j;
            j["n"] = n;
            j["p"] = p;
            j["q"] = q;
            j["seed"] = seed;
            j["replica"] = replica;
            j["epsilon"] = epsilon;
            j["form"] = form;
            j["context"] = {{"p", ctx.p()}, {"q", ctx.q()}, {"c", ctx.c()}, {"r", ctx.r()}};
            j["pass"] = report.all_pass();
            j["violations"] = report.violations;
            ojson idx = ojson::array();
            for (std::size_t i = 0; i < report.indices.size(); ++i)
            {
                auto const& r = report.indices[i];
                idx.push_back({{"i", i + 1}, {"lower", r.lower}, {"value", r.value}, {"upper", r.upper}, {"pass", r.pass}});
            }
            j["indices"] = idx;
            OutputTarget target(out_path, out);
            target.stream() << dump_json(j) << '\n';
            return report.all_pass() ? exit_ok : exit_verification_failed;
        }
    }
    catch (DegenerateNormalization const& e)
    {
        err << "error: DegenerateNormalization: " << e.what() << '\n';
        return exit_usage;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace skewspec
