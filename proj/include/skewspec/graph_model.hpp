#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "skewspec/rng.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
/*!
 * Parameters of the randomly oriented Erdos-Renyi model: n vertices, edge
 * probability p, and probability q of orienting an edge {i, j} (i < j) as
 * the arc i -> j.
 */
class GraphParams
{
  public:
    //! Throws InvalidParams unless n >= 1 and p, q in [0, 1]
    GraphParams(std::size_t n, double p, double q);

    std::size_t n() const { return n_; }
    double p() const { return p_; }
    double q() const { return q_; }

  private:
    std::size_t n_;
    double p_;
    double q_;
};

//! Directed edge tail -> head, 0-based vertex indices.
struct Arc
{
    std::uint32_t tail;
    std::uint32_t head;

    friend bool operator==(Arc const&, Arc const&) = default;
    friend auto operator<=>(Arc const&, Arc const&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * An oriented graph: no self-loops and at most one arc per unordered pair.
 *
 * Arcs are kept sorted by (min(tail, head), max(tail, head)).
 */
class OrientedGraph
{
  public:
    OrientedGraph() = default;

    //! Validates the arcs; throws InvalidParams on loops, duplicate pairs or
    //! out-of-range vertices
    OrientedGraph(std::size_t n, std::vector<Arc> arcs);

    std::size_t n() const { return n_; }
    std::vector<Arc> const& arcs() const { return arcs_; }

    friend bool operator==(OrientedGraph const&, OrientedGraph const&) = default;

  private:
    struct Trusted
    {
    };
    OrientedGraph(std::size_t n, std::vector<Arc> arcs, Trusted)
        : n_(n), arcs_(std::move(arcs))
    {
    }
    friend OrientedGraph sample_graph(GraphParams const&, SeedSpec);

    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
};

//---------------------------------------------------------------------------//
//! Dense skew-adjacency matrix with entries in {-1, 0, +1}.
class SkewMatrix
{
  public:
    SkewMatrix() = default;
    explicit SkewMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

    std::size_t size() const { return n_; }

    std::int8_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    //! Sets (i, j) to v and (j, i) to -v
    void set_pair(std::size_t i, std::size_t j, std::int8_t v)
    {
        entries_[i * n_ + j] = v;
        entries_[j * n_ + i] = static_cast<std::int8_t>(-v);
    }

    bool is_skew_symmetric() const;

    friend bool operator==(SkewMatrix const&, SkewMatrix const&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::int8_t> entries_;
};

//---------------------------------------------------------------------------//
/*!
 * Sample G(n, p) with random orientation.
 *
 * Unordered pairs i < j are visited in lexicographic order; pair number t
 * consumes uniform draw t of the replica stream. u < pq gives the arc
 * i -> j, pq <= u < p gives j -> i, otherwise no edge.
 */
OrientedGraph sample_graph(GraphParams const& params, SeedSpec seed);

SkewMatrix skew_adjacency(OrientedGraph const& g);

//! Lexicographic index of the unordered pair i < j among n vertices
inline std::uint64_t pair_index(std::size_t n, std::size_t i, std::size_t j)
{
    return static_cast<std::uint64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

//---------------------------------------------------------------------------//
// Arc-list text format:
//   # skewspec arcs n=<n>
//   <tail>\t<head>      (1-based, one arc per line)
void write_arcs(std::ostream& os, OrientedGraph const& g);
OrientedGraph read_arcs(std::istream& is);

}  // namespace skewspec
