#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"
#include "skewspec/graph_model.hpp"
#include "skewspec/normalization.hpp"
#include "skewspec/spectral.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
struct EnsembleConfig
{
    GraphParams params{1000, 0.1, 0.5};
    std::size_t replicas = 1;
    std::uint64_t master_seed = 0;
    std::size_t bins = 60;
    double range_lo = -2.5;
    double range_hi = 2.5;
    double epsilon_weyl = 0.3;
    //! Run the Weyl sandwich check on each replica; costs a second
    //! eigensolve per replica when q != 1/2
    bool weyl_check = true;
    std::vector<unsigned> moments{1, 2, 3, 4, 6};

    //! Throws InvalidConfig or DegenerateNormalization
    void validate() const;

    //! Keys: n, p, q, replicas, seed, bins, range, epsilon_weyl, moments,
    //! weyl_check. Unknown keys are rejected.
    static EnsembleConfig from_json(nlohmann::json const& j);
    nlohmann::ordered_json to_json() const;
};

//---------------------------------------------------------------------------//
struct Histogram
{
    std::vector<double> edges;  //!< bins + 1 values
    std::vector<std::uint64_t> counts;
    std::vector<double> density;  //!< count / (total * width)
    std::uint64_t below = 0;  //!< values < edges.front()
    std::uint64_t above = 0;  //!< values > edges.back()
    std::uint64_t total = 0;  //!< all values seen, in range or not

    Histogram(std::size_t bins, double lo, double hi);

    void add(double x);
    //! Recomputes density from counts and total
    void finalize();

    std::uint64_t in_range() const { return total - below - above; }
    double width(std::size_t b) const { return edges[b + 1] - edges[b]; }
};

//! CSV "bin_left,bin_right,count,density"
void write_histogram_csv(std::ostream& os, Histogram const& h);

//---------------------------------------------------------------------------//
struct MomentSummary
{
    unsigned k = 0;
    double target = 0.0;  //!< semicircle moment
    double pooled = 0.0;  //!< over the union of all replicas' eigenvalues
    double std_error = 0.0;  //!< across per-replica moments
};

struct ReplicaSummary
{
    double ks = 0.0;
    double radius = 0.0;  //!< spectral radius of n^{-1/2} X
    std::vector<double> moments;  //!< aligned with config moments
    std::optional<std::size_t> weyl_violations;
    double seconds = 0.0;
};

struct EnsembleReport
{
    EnsembleConfig config;
    NormalizationContext context;
    Histogram histogram;
    std::vector<ReplicaSummary> replicas;
    double pooled_ks = 0.0;
    std::vector<MomentSummary> moments;
    std::optional<double> weyl_pass_rate;  //!< fraction of replicas with no violation
    double wall_seconds = 0.0;

    //! Timings are the only nondeterministic fields; leave them out for
    //! byte-comparable output
    nlohmann::ordered_json to_json(bool include_timings = false) const;
};

//---------------------------------------------------------------------------//
//! Spectrum of n^{-1/2} X for one sampled graph: eig_skew(S + cY) / (r sqrt n).
Spectrum replica_spectrum(GraphParams const& params, SeedSpec seed);

//! Worker count from SKEWSPEC_THREADS, else hardware concurrency (>= 1).
std::size_t default_worker_count();

/*!
 * Replica-parallel Monte Carlo run.
 *
 * Replica r uses SeedSpec{master_seed, r}. Results are merged in replica
 * order, so everything but the timings is independent of the worker count.
 * workers == 0 selects default_worker_count().
 */
EnsembleReport run_ensemble(EnsembleConfig const& cfg, std::size_t workers = 0);

}  // namespace skewspec
