#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "skewspec/dense_matrix.hpp"
#include "skewspec/graph_model.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
/*!
 * Normalizing constants of the model.
 *
 * The shift c = p(1 - 2q) recenters the entries and
 * r^2 = (1 + c)^2 pq + (1 - c)^2 p(1 - q) rescales them, so that
 * X = -i (S + c Y) / r has zero-mean i.i.d. entries above the diagonal.
 */
class NormalizationContext
{
  public:
    double p() const { return p_; }
    double q() const { return q_; }
    double c() const { return c_; }
    double r() const { return r_; }
    double r_squared() const { return r2_; }

  private:
    NormalizationContext(double p, double q, double c, double r2, double r)
        : p_(p), q_(q), c_(c), r2_(r2), r_(r)
    {
    }
    friend NormalizationContext compute_context(double, double);

    double p_, q_, c_, r2_, r_;
};

//! Throws InvalidParams for p, q outside [0, 1] and DegenerateNormalization
//! when r = 0
NormalizationContext compute_context(double p, double q);

inline NormalizationContext compute_context(GraphParams const& params)
{
    return compute_context(params.p(), params.q());
}

//---------------------------------------------------------------------------//
//! Implicit skew matrix with +1 above and -1 below the diagonal.
class ShiftMatrix
{
  public:
    explicit ShiftMatrix(std::size_t n) : n_(n) {}

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const
    {
        return i < j ? 1.0 : (i > j ? -1.0 : 0.0);
    }

    DenseMatrix materialize() const;

  private:
    std::size_t n_;
};

//! S as a real matrix
DenseMatrix to_dense(SkewMatrix const& s);

//! M = S + c Y; the spectrum of X is the (-i)-spectrum of M divided by r
DenseMatrix shifted_skew_matrix(SkewMatrix const& s, NormalizationContext const& ctx);

//---------------------------------------------------------------------------//
/*!
 * Three-point law of an upper-triangular entry of X.
 *
 * Index 0: s = +1, value -i(1 + c)/r, probability pq.
 * Index 1: s = -1, value +i(1 - c)/r, probability p(1 - q).
 * Index 2: s =  0, value -i c/r,      probability 1 - p.
 */
struct EntryDistribution
{
    std::array<std::complex<double>, 3> support;
    std::array<double, 3> probability;

    std::complex<double> mean() const;
    //! E|x|^2 = 1 + c^2 (1 - p) / r^2
    double second_abs_moment() const;
};

EntryDistribution entry_distribution(NormalizationContext const& ctx);

}  // namespace skewspec
