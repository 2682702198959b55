#pragma once

#include <cstdint>

#include "skewspec/spectral.hpp"

namespace skewspec::semicircle
{
//! Density (1/2pi) sqrt(4 - x^2) on [-2, 2], zero outside.
double pdf(double x);

//! 1/2 + x sqrt(4 - x^2)/(4 pi) + arcsin(x/2)/pi on [-2, 2], clamped outside.
double cdf(double x);

//! Catalan number C_t as an exact integer; t <= 33 fits in 64 bits.
std::uint64_t catalan(unsigned t);

//! k-th moment: 0 for odd k, C_{k/2} for even k.
double moment(unsigned k);

//! sup_x |F_e(x) - cdf(x)|, evaluated on both sides of every jump.
double ks_distance(ESD const& e);

//! (1/n) sum x_i^k over the sample points.
double empirical_moment(ESD const& e, unsigned k);

//! k-th moment by N-point Gauss-Chebyshev (second kind) quadrature of pdf;
//! exact up to rounding for k <= 2N - 1.
double quadrature_moment(unsigned k, unsigned nodes = 64);

//! Inverse of cdf by bracketed Newton iteration, u in [0, 1].
double quantile(double u);

}  // namespace skewspec::semicircle
