#include <filesystem>
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "skewspec/cli.hpp"

using namespace skewspec;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "skewspec");
    std::ostringstream out, err;
    int const status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch(std::string const& name)
{
    fs::path dir = fs::path(SKEWSPEC_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("help and usage errors")
{
    auto const help = run({"--help"});
    CHECK(help.status == exit_ok);
    for (char const* sub : {"sample", "spectrum", "ensemble", "verify", "check-bounds"})
    {
        CHECK(help.out.find(sub) != std::string::npos);
        auto const sub_help = run({sub, "--help"});
        CHECK(sub_help.status == exit_ok);
        CHECK(sub_help.out.find("--") != std::string::npos);
    }
    auto const sample_help = run({"sample", "--help"});
    for (char const* flag : {"--n", "--p", "--q", "--seed", "--out"})
        CHECK(sample_help.out.find(flag) != std::string::npos);

    CHECK(run({}).status == exit_usage);
    CHECK(run({"bogus"}).status == exit_usage);
    CHECK(run({"sample", "--n", "3", "--p", "0.5", "--q", "0.5", "--frobnicate"}).status == exit_usage);
    CHECK(run({"sample", "--n", "3", "--p", "2", "--q", "0.5"}).status == exit_usage);
    CHECK(run({"sample", "--p", "0.5", "--q", "0.5"}).status == exit_usage);
    CHECK(run({"verify", "--suite", "nothing"}).status == exit_usage);
    CHECK(run({"spectrum", "--n", "3"}).status == exit_usage);
    CHECK(run({"spectrum", "--n", "3", "--p", "0.5"}).status == exit_usage);
}

TEST_CASE("sample is reproducible and parses back")
{
    auto const a = run({"sample", "--n", "8", "--p", "0.5", "--q", "0.3", "--seed", "4"});
    auto const b = run({"sample", "--n", "8", "--p", "0.5", "--q", "0.3", "--seed", "4"});
    CHECK(a.status == exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("# skewspec arcs n=8\n", 0) == 0);
    auto const c = run({"sample", "--n", "8", "--p", "0.5", "--q", "0.3", "--seed", "5"});
    CHECK(c.out != a.out);

    auto const dir = scratch("sample");
    auto const file = (dir / "g.arcs").string();
    CHECK(run({"sample", "--n", "8", "--p", "0.5", "--q", "0.3", "--seed", "4", "--out", file}).status == exit_ok);
    CHECK(slurp(file) == a.out);
}

TEST_CASE("spectrum")
{
    auto const dir = scratch("spectrum");
    auto const arcs = (dir / "tour.arcs").string();
    {
        std::ofstream f(arcs);
        f << "# skewspec arcs n=2\n1\t2\n";
    }
    auto const raw = run({"spectrum", "--in", arcs});
    CHECK(raw.status == exit_ok);
    CHECK(raw.out == "index,lambda\n1,-1\n2,1\n");

    // p = 1, q = 1/2: c = 0, r = 1, so scaling divides by sqrt(2)
    auto const scaled = run({"spectrum", "--in", arcs, "--p", "1", "--q", "0.5", "--scaled"});
    CHECK(scaled.status == exit_ok);
    std::istringstream rows(scaled.out);
    std::string header, row;
    std::getline(rows, header);
    CHECK(header == "index,lambda");
    for (double expect : {-1.0, 1.0})
    {
        std::getline(rows, row);
        CHECK(std::stod(row.substr(row.find(',') + 1)) == doctest::Approx(expect / std::sqrt(2.0)).epsilon(1e-15));
    }

    CHECK(run({"spectrum", "--in", arcs, "--scaled"}).status == exit_usage);
    CHECK(run({"spectrum", "--in", (dir / "missing").string()}).status == exit_usage);

    auto const degenerate = run({"spectrum", "--n", "4", "--p", "1", "--q", "1", "--seed", "7"});
    CHECK(degenerate.status == exit_usage);
    CHECK(degenerate.err.find("DegenerateNormalization") != std::string::npos);

    auto const s1 = run({"spectrum", "--n", "30", "--p", "0.2", "--q", "0.6", "--seed", "3", "--scaled"});
    auto const s2 = run({"spectrum", "--n", "30", "--p", "0.2", "--q", "0.6", "--seed", "3", "--scaled"});
    CHECK(s1.status == exit_ok);
    CHECK(s1.out == s2.out);
    CHECK(std::count(s1.out.begin(), s1.out.end(), '\n') == 31);
}

TEST_CASE("verify suites")
{
    auto const walks = run({"verify", "--suite", "walks", "--t-max", "4"});
    CHECK(walks.status == exit_ok);
    auto const j = nlohmann::json::parse(walks.out);
    CHECK(j["suite"] == "walks");
    CHECK(j["pass"] == true);
    std::vector<std::uint64_t> counts;
    for (auto const& c : j["checks"])
        if (c["check"].get<std::string>().rfind("tree_walk_count", 0) == 0)
            counts.push_back(c["actual"].get<std::uint64_t>());
    CHECK(counts == std::vector<std::uint64_t>{2, 12, 120, 1680});

    CHECK(run({"verify", "--suite", "walks", "--t-max", "7"}).status == exit_usage);

    auto const moments = run({"verify", "--suite", "moments"});
    CHECK(moments.status == exit_ok);
    CHECK(nlohmann::json::parse(moments.out)["pass"] == true);

    auto const trace = run({"verify", "--suite", "trace", "--n", "3", "--k", "4", "--p", "0.3", "--q", "0.5"});
    CHECK(trace.status == exit_ok);
    CHECK(nlohmann::json::parse(trace.out)["checks"].size() == 2);

    CHECK(run({"verify", "--suite", "trace", "--n", "5"}).status == exit_usage);

    // The magnitude bound does not hold next to r = 0; the suite must say so
    auto const edge = run({"verify", "--suite", "moments", "--p", "0.9", "--q", "0"});
    CHECK(edge.status == exit_verification_failed);
    CHECK(nlohmann::json::parse(edge.out)["pass"] == false);
}

TEST_CASE("check-bounds")
{
    auto const ok = run({"check-bounds", "--n", "200", "--p", "0.1", "--q", "0.5", "--seed", "1", "--epsilon", "0.3"});
    CHECK(ok.status == exit_ok);
    auto const j = nlohmann::json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["indices"].size() == 200);

    auto const tight = run({"check-bounds", "--n", "200", "--p", "0.1", "--q", "0.5", "--seed", "1", "--epsilon", "0"});
    auto const jt = nlohmann::json::parse(tight.out);
    CHECK(tight.status == (jt["violations"] == 0 ? exit_ok : exit_verification_failed));

    auto const published
        = run({"check-bounds", "--n", "400", "--p", "0.1", "--q", "0.8", "--seed", "1", "--form", "published"});
    CHECK(published.status == exit_verification_failed);
    auto const weyl = run({"check-bounds", "--n", "400", "--p", "0.1", "--q", "0.8", "--seed", "1"});
    CHECK(weyl.status == exit_ok);
    CHECK(run({"check-bounds", "--n", "4", "--p", "1", "--q", "0"}).status == exit_usage);
}

TEST_CASE("ensemble writes deterministic files")
{
    auto const dir = scratch("ensemble");
    auto const cfg = (dir / "cfg.json").string();
    {
        std::ofstream f(cfg);
        f << R"({"n":40,"p":0.3,"q":0.4,"replicas":6,"seed":3,"bins":10,"range":[-2.5,2.5]})";
    }
    auto const a = run({"ensemble", "--config", cfg, "--out-dir", (dir / "a").string(), "--threads", "1"});
    auto const b = run({"ensemble", "--config", cfg, "--out-dir", (dir / "b").string(), "--threads", "3"});
    CHECK(a.status == exit_ok);
    CHECK(b.status == exit_ok);
    CHECK(a.out.find("pooled_ks") != std::string::npos);
    for (char const* f : {"histogram.csv", "report.json"})
    {
        CHECK(fs::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(fs::exists(dir / "a" / "timings.json"));
    CHECK(slurp(dir / "a" / "histogram.csv").rfind("bin_left,bin_right,count,density\n", 0) == 0);

    auto const bad = (dir / "bad.json").string();
    {
        std::ofstream f(bad);
        f << R"({"n":40,"p":0.3,"q":0.4,"colour":1})";
    }
    CHECK(run({"ensemble", "--config", bad, "--out-dir", (dir / "c").string()}).status == exit_usage);
    {
        std::ofstream f(bad);
        f << "{not json";
    }
    CHECK(run({"ensemble", "--config", bad, "--out-dir", (dir / "c").string()}).status == exit_usage);
}
