#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "skewspec/dense_matrix.hpp"
#include "skewspec/normalization.hpp"
#include "skewspec/tridiagonal.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
/*!
 * Real spectrum of a Hermitian matrix -i M (M real skew-symmetric): the
 * values lambda with i*lambda an eigenvalue of M, sorted ascending.
 */
class Spectrum
{
  public:
    Spectrum() = default;
    explicit Spectrum(std::vector<double> lambdas);

    std::size_t size() const { return lambdas_.size(); }
    bool empty() const { return lambdas_.empty(); }

    std::span<double const> ascending() const { return lambdas_; }
    double operator[](std::size_t i) const { return lambdas_[i]; }

    //! Descending order: descending(0) is the largest value
    double descending(std::size_t i) const { return lambdas_[lambdas_.size() - 1 - i]; }
    std::vector<double> descending() const { return {lambdas_.rbegin(), lambdas_.rend()}; }

    //! Every value multiplied by a positive factor
    Spectrum scaled(double factor) const;

    double default_symmetry_tolerance() const { return 1e-8 * static_cast<double>(size()); }

    //! |l[i] + l[n-1-i]| <= tol * max(1, max|l|) for all i, and for odd n the
    //! middle value is within tol of zero
    bool is_symmetric(double tol) const;
    bool is_symmetric() const { return is_symmetric(default_symmetry_tolerance()); }

    friend bool operator==(Spectrum const&, Spectrum const&) = default;

  private:
    std::vector<double> lambdas_;
};

//---------------------------------------------------------------------------//
//! Empirical spectral distribution: right-continuous step CDF of its points.
class ESD
{
  public:
    explicit ESD(std::vector<double> points);

    std::size_t size() const { return points_.size(); }
    std::span<double const> points() const { return points_; }

    //! Number of points <= x
    std::size_t count_le(double x) const;
    //! Number of points < x
    std::size_t count_lt(double x) const;

    double operator()(double x) const;

  private:
    std::vector<double> points_;
};

//---------------------------------------------------------------------------//
//! Orthogonal reduction M = Q T Q^T of a real skew matrix to skew
//! tridiagonal T with T(k+1, k) = subdiag[k].
struct SkewTridiagonalization
{
    std::vector<double> subdiag;
    //! Q, only filled when requested
    DenseMatrix q;
};

/*!
 * Blocked Householder reduction of a skew-symmetric matrix.
 *
 * Only the strict lower triangle of the input is read. Each reflector
 * H = I - tau u u^T transforms the trailing block as A + u p^T - p u^T with
 * p = tau A u; within a panel the rank-2 updates are deferred and applied to
 * the trailing matrix together at the end of the panel.
 */
SkewTridiagonalization skew_tridiagonalize(DenseMatrix a, bool accumulate_q = false);

//! Symmetric tridiagonal similar to -i T: zero diagonal, off-diagonal |b_k|.
SymTridiagonal hermitian_tridiagonal(SkewTridiagonalization const& red);

//! Maximum |m_ij + m_ji| over all i, j (diagonal counts as |2 m_ii|)
double skew_defect(DenseMatrix const& m);

/*!
 * All real lambda with i*lambda an eigenvalue of the skew-symmetric m.
 *
 * Throws NotSkewSymmetric if any |m_ij + m_ji| exceeds 1e-12.
 */
Spectrum eig_skew(DenseMatrix const& m, TridiagonalMethod method = TridiagonalMethod::implicit_ql);

//! {cot(pi (2i - 1) / 2n) : i = 1..n}, ascending
Spectrum y_spectrum_closed_form(std::size_t n);

//! ESD of {lambda_i / scale}; throws InvalidParams unless scale > 0
ESD esd(Spectrum const& spec, double scale);

double spectral_radius(Spectrum const& spec);

//---------------------------------------------------------------------------//
/*!
 * Shape of the eigenvalue sandwich for -iS.
 *
 * With -iS = r X + i c Y and Weyl's inequality, the i-th largest eigenvalue
 * lies within r sqrt(n) [rho_min(X/sqrt n), rho_max(X/sqrt n)] of the i-th
 * largest eigenvalue of i c Y, which is p(2q - 1) cot(theta_i).
 */
enum class WeylForm
{
    //! r sqrt(n) (+-2 +- eps) + p(2q-1) cot(theta_i)
    weyl,
    //! r sqrt(n) (+-2 + p(2q-1) cot(theta_i) +- eps), shift term also scaled
    published,
};

struct WeylIndexResult
{
    double lower;
    double value;
    double upper;
    bool pass;
};

struct WeylReport
{
    double epsilon = 0.0;
    WeylForm form = WeylForm::weyl;
    std::vector<WeylIndexResult> indices;  //!< index i holds mu-hat_{i+1}
    std::size_t violations = 0;

    bool all_pass() const { return violations == 0; }
};

//! cot angle index for descending position i (1-based) given the sign of
//! p(2q-1): q >= 1/2 uses pi(2i-1)/2n, q < 1/2 uses pi(2n-2i+1)/2n
double weyl_shift_cot(std::size_t i, std::size_t n, double q);

/*!
 * Check each descending eigenvalue of -iS (unnormalized) against its
 * sandwich. The report carries violations; it never throws for them.
 */
WeylReport weyl_bounds(Spectrum const& spec_of_minus_i_s, NormalizationContext const& ctx,
                       std::size_t n, double epsilon, WeylForm form = WeylForm::weyl);

//! CSV "index,lambda", ascending, 1-based index, 17 significant digits
void write_spectrum_csv(std::ostream& os, Spectrum const& spec);

}  // namespace skewspec
