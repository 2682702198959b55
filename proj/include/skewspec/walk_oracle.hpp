#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skewspec/graph_model.hpp"
#include "skewspec/normalization.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
// Closed walks i_1 -> i_2 -> ... -> i_k -> i_1 in the complete graph
//---------------------------------------------------------------------------//
enum class WalkCase
{
    A1,  //!< odd k, some odd-multiplicity edge traversed once
    A2,  //!< odd k, every odd-multiplicity edge traversed >= 3 times
    B1,  //!< even k, some edge with odd multiplicity
    B2,  //!< even k, all multiplicities even, m <= k/2
    B3,  //!< even k, all multiplicities even, m = k/2 + 1
};

char const* to_string(WalkCase c);

//! Traversal counts of the unordered pair {low, high}, low < high.
struct EdgeCount
{
    std::uint32_t low;
    std::uint32_t high;
    unsigned forward;  //!< low -> high traversals
    unsigned backward;  //!< high -> low traversals

    unsigned total() const { return forward + backward; }
};

struct WalkClassification
{
    std::size_t length = 0;  //!< k
    std::size_t distinct_vertices = 0;  //!< m
    std::vector<EdgeCount> edges;  //!< sorted by (low, high)
    std::vector<EdgeCount> omega;  //!< edges with odd total
    WalkCase label = WalkCase::A1;
    //! Each arc and its reverse traversed exactly once and the edges form a
    //! tree on the visited vertices
    bool tree_traversal = false;
};

//! Throws MalformedWalk for an empty walk or a consecutive repeat
//! (including the closing step).
WalkClassification classify_walk(std::span<std::uint32_t const> walk);

/*!
 * Brute-force count of closed walks of length 2t on the labeled vertices
 * {1, ..., t+1} visiting every vertex, traversing each arc and its reverse
 * exactly once, with the traversed edges forming a tree.
 *
 * Throws EnumerationBoundExceeded for t > 6 (and for t = 0).
 */
std::uint64_t count_tree_walks(unsigned t);

//! Closed form C_t (t+1)! for the tree-walk count.
std::uint64_t tree_walk_formula(unsigned t);

//---------------------------------------------------------------------------//
// Exact moments
//---------------------------------------------------------------------------//
//! E(x_12^k) for the three-point law x = -i(s + c)/r.
std::complex<double> exact_entry_moment(NormalizationContext const& ctx, unsigned k);

/*!
 * (1 / n^{1+k/2}) E Trace(X^k) by enumerating all 3^{n(n-1)/2} edge-state
 * configurations. n <= 4 and k <= 8, otherwise EnumerationBoundExceeded.
 */
double trace_moment_exact_tiny(GraphParams const& params, unsigned k);

/*!
 * Same quantity as a sum over closed walks of products of independent
 * pair expectations (-1)^{backward} E(x_12^{forward + backward}).
 */
double trace_moment_walk_sum(GraphParams const& params, unsigned k);

using Rational = boost::multiprecision::cpp_rational;

/*!
 * Exact rational value of trace_moment_exact_tiny for rational p, q.
 *
 * Odd powers of a skew matrix are traceless, and for even k every factor is
 * rational in p, q and r^2, so the result is exactly rational.
 */
Rational trace_moment_exact_rational(std::size_t n, Rational const& p, Rational const& q, unsigned k);

//---------------------------------------------------------------------------//
struct MonteCarloEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t replicas = 0;
};

/*!
 * Monte Carlo estimate of the k-th ESD moment of n^{-1/2} X over sampled
 * graphs; replica r uses SeedSpec{seed, r}. Needs replicas >= 2.
 */
MonteCarloEstimate trace_moment_mc(GraphParams const& params, unsigned k, std::size_t replicas,
                                   std::uint64_t seed);

}  // namespace skewspec
