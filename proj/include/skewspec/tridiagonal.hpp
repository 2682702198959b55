#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace skewspec
{
//! Real symmetric tridiagonal matrix: diag has n entries, offdiag n - 1.
struct SymTridiagonal
{
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const { return diag.size(); }
};

enum class TridiagonalMethod
{
    implicit_ql,  //!< QL with implicit Wilkinson shifts, bisection on failure
    bisection,  //!< Sturm-sequence bisection only
};

//! Number of eigenvalues strictly less than x.
std::size_t sturm_count(SymTridiagonal const& t, double x);

//! Ascending eigenvalues by implicit QL; nullopt if an eigenvalue fails to
//! converge within the iteration cap.
std::optional<std::vector<double>> eigenvalues_implicit_ql(SymTridiagonal t);

//! Ascending eigenvalues by bisection to absolute accuracy ~eps * ||T||.
std::vector<double> eigenvalues_bisection(SymTridiagonal const& t);

std::vector<double> tridiagonal_eigenvalues(SymTridiagonal const& t,
                                            TridiagonalMethod method = TridiagonalMethod::implicit_ql);

}  // namespace skewspec
