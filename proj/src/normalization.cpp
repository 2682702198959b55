#include "skewspec/normalization.hpp"

#include <cmath>
#include <string>

#include "skewspec/errors.hpp"

namespace skewspec
{
NormalizationContext compute_context(double p, double q)
{
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw InvalidParams("p and q must lie in [0, 1]");

    double const c = p * (1.0 - 2.0 * q);
    double const r2 = (1.0 + c) * (1.0 + c) * p * q + (1.0 - c) * (1.0 - c) * p * (1.0 - q);
    if (!(r2 > 0.0))
        throw DegenerateNormalization("r(p, q) = 0 for p = " + std::to_string(p) + ", q = "
                                      + std::to_string(q) + ": normalized matrix undefined");

    // Expanded form r^2 = p(1 + c^2) - 2c^2; the subtraction's condition
    // number scales the admissible discrepancy.
    double const expanded = p * (1.0 + c * c) - 2.0 * c * c;
    double const scale = p * (1.0 + c * c) + 2.0 * c * c;
    if (std::abs(r2 - expanded) > 1e-12 * scale)
        throw DegenerateNormalization("inconsistent r(p, q) evaluation");

    return NormalizationContext(p, q, c, r2, std::sqrt(r2));
}

DenseMatrix ShiftMatrix::materialize() const
{
    DenseMatrix y(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            y(i, j) = (*this)(i, j);
    return y;
}

DenseMatrix to_dense(SkewMatrix const& s)
{
    std::size_t const n = s.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = static_cast<double>(s(i, j));
    return m;
}

DenseMatrix shifted_skew_matrix(SkewMatrix const& s, NormalizationContext const& ctx)
{
    std::size_t const n = s.size();
    double const c = ctx.c();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            double const v = static_cast<double>(s(i, j)) + c;
            m(i, j) = v;
            m(j, i) = -v;
        }
    }
    return m;
}

std::complex<double> EntryDistribution::mean() const
{
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k)
        acc += probability[k] * support[k];
    return acc;
}

double EntryDistribution::second_abs_moment() const
{
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        acc += probability[k] * std::norm(support[k]);
    return acc;
}

EntryDistribution entry_distribution(NormalizationContext const& ctx)
{
    double const p = ctx.p(), q = ctx.q(), c = ctx.c(), r = ctx.r();
    using cd = std::complex<double>;
    return EntryDistribution{
        {cd{0.0, -(1.0 + c) / r}, cd{0.0, (1.0 - c) / r}, cd{0.0, -c / r}},
        {p * q, p * (1.0 - q), 1.0 - p},
    };
}

}  // namespace skewspec
