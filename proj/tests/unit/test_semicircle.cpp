#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skewspec/rng.hpp"
#include "skewspec/semicircle.hpp"

using namespace skewspec;
namespace sc = skewspec::semicircle;

namespace
{
// Composite Simpson on [a, b] after the substitution x = 2 sin(theta), which
// removes the square-root endpoint singularity of the density
template<class F>
double simpson_theta(F f, double a, double b, int panels = 20000)
{
    double const ta = std::asin(std::clamp(a / 2.0, -1.0, 1.0));
    double const tb = std::asin(std::clamp(b / 2.0, -1.0, 1.0));
    double const h = (tb - ta) / panels;
    auto g = [&](double t) {
        double const x = 2.0 * std::sin(t);
        return f(x) * sc::pdf(x) * 2.0 * std::cos(t);
    };
    double s = g(ta) + g(tb);
    for (int i = 1; i < panels; ++i)
        s += g(ta + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
}  // namespace

TEST_CASE("pdf examples")
{
    CHECK(sc::pdf(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(sc::pdf(0.0) == doctest::Approx(0.3183098862).epsilon(1e-10));
    CHECK(sc::pdf(2.0) == 0.0);
    CHECK(sc::pdf(-2.0) == 0.0);
    CHECK(sc::pdf(2.5) == 0.0);
    CHECK(sc::pdf(1.0) == doctest::Approx(0.2756644477).epsilon(1e-10));
}

TEST_CASE("pdf integrates to one")
{
    CHECK(std::abs(simpson_theta([](double) { return 1.0; }, -2.0, 2.0) - 1.0) <= 1e-10);
}

TEST_CASE("cdf examples and quadrature")
{
    CHECK(sc::cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sc::cdf(2.0) == 1.0);
    CHECK(sc::cdf(-2.0) == 0.0);
    CHECK(sc::cdf(-7.0) == 0.0);
    CHECK(sc::cdf(7.0) == 1.0);
    double const one = 0.5 + std::sqrt(3.0) / (4.0 * std::numbers::pi) + 1.0 / 6.0;
    CHECK(sc::cdf(1.0) == doctest::Approx(one).epsilon(1e-14));
    CHECK(sc::cdf(1.0) == doctest::Approx(0.8044989).epsilon(1e-7));
    for (double x : {-1.9, -1.0, -0.3, 0.0, 0.7, 1.0, 1.5, 1.99})
        CHECK(std::abs(sc::cdf(x) - simpson_theta([](double) { return 1.0; }, -2.0, x)) <= 1e-10);
}

TEST_CASE("cdf monotone and derivative matches pdf")
{
    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i)
    {
        double const x = -2.5 + 5.0 * i / 10000.0;
        double const f = sc::cdf(x);
        CHECK(f >= prev);
        prev = f;
    }
    double const h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i <= 3800; ++i)
    {
        double const x = -1.9 + i * 1e-3;
        worst = std::max(worst, std::abs((sc::cdf(x + h) - sc::cdf(x - h)) / (2 * h) - sc::pdf(x)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("moments")
{
    CHECK(sc::moment(0) == 1.0);
    CHECK(sc::moment(1) == 0.0);
    CHECK(sc::moment(2) == 1.0);
    CHECK(sc::moment(4) == 2.0);
    CHECK(sc::moment(6) == 5.0);
    CHECK(sc::moment(7) == 0.0);
    for (unsigned k = 0; k <= 12; ++k)
    {
        double const quad = simpson_theta([k](double x) { return std::pow(x, k); }, -2.0, 2.0);
        CHECK_MESSAGE(std::abs(sc::moment(k) - quad) <= 1e-9, "k=" << k);
        CHECK(std::abs(sc::moment(k) - sc::quadrature_moment(k)) <= 1e-9);
    }
}

TEST_CASE("catalan numbers")
{
    std::uint64_t const known[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (unsigned t = 0; t <= 10; ++t)
        CHECK(sc::catalan(t) == known[t]);
    CHECK(sc::catalan(33) == 212336130412243110ull);
    for (unsigned t = 0; t <= 10; ++t)
        CHECK(sc::catalan(t + 1) * (t + 2) == sc::catalan(t) * 2 * (2 * t + 1));
}

TEST_CASE("ks distance examples")
{
    CHECK(sc::ks_distance(ESD({0.0})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sc::ks_distance(ESD({-2.0, 2.0})) == doctest::Approx(0.5).epsilon(1e-15));
    // Far outside the support the step is at the wrong end entirely
    CHECK(sc::ks_distance(ESD({5.0})) == doctest::Approx(1.0));
}

TEST_CASE("ks distance of quantile samples")
{
    // n midpoint quantiles: the exact KS distance is 1/(2n)
    std::vector<double> pts;
    std::size_t const n = 1000;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(sc::quantile((i + 0.5) / n));
    CHECK(sc::ks_distance(ESD(pts)) == doctest::Approx(0.5 / n).epsilon(1e-8));

    for (double u : {1e-9, 0.01, 0.3, 0.5, 0.77, 0.999})
        CHECK(std::abs(sc::cdf(sc::quantile(u)) - u) <= 1e-12);
}

TEST_CASE("ks distance of i.i.d. draws")
{
    ReplicaStream s({31, 0});
    std::vector<double> pts(1000000);
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = sc::quantile(s.uniform(i));
    double const ks = sc::ks_distance(ESD(pts));
    MESSAGE("KS of 1e6 semicircle draws: " << ks);
    CHECK(ks <= 0.002);
}

TEST_CASE("property: ks distance lies in [0, 1] and matches a brute-force sup")
{
    ReplicaStream s({5, 5});
    std::uint64_t draw = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t const m = 1 + s.bits(draw++) % 40;
        std::vector<double> pts;
        for (std::size_t i = 0; i < m; ++i)
            pts.push_back(-3.0 + 6.0 * s.uniform(draw++));
        ESD const e(pts);
        double const ks = sc::ks_distance(e);
        CHECK(ks >= 0.0);
        CHECK(ks <= 1.0);
        // sup over both sides of every jump
        double brute = 0.0;
        for (double x : e.points())
        {
            brute = std::max(brute, std::abs(double(e.count_le(x)) / m - sc::cdf(x)));
            brute = std::max(brute, std::abs(double(e.count_lt(x)) / m - sc::cdf(x)));
        }
        CHECK(ks == doctest::Approx(brute).epsilon(1e-14));
    }
}

TEST_CASE("empirical moments")
{
    ESD const e({-1.0, 1.0});
    CHECK(sc::empirical_moment(e, 2) == 1.0);
    CHECK(sc::empirical_moment(e, 3) == 0.0);
    CHECK(sc::empirical_moment(e, 0) == 1.0);
    CHECK(sc::empirical_moment(ESD({2.0, 4.0}), 1) == 3.0);
}
