#pragma once

#include <array>
#include <cstdint>

namespace skewspec
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
 * numbers: as easy as 1, 2, 3", SC 2011).
 *
 * The output is a pure function of a 128-bit counter and a 64-bit key, so a
 * draw can be addressed directly without advancing any state.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr int rounds = 10;

    static Counter block(Counter ctr, Key key);
};

//---------------------------------------------------------------------------//
//! Identifies the random stream of one Monte Carlo replica.
struct SeedSpec
{
    std::uint64_t master_seed = 0;
    std::uint64_t replica_index = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Random-access uniform stream for one replica.
 *
 * Draw \c i of replica \c r under master seed \c s is
 * Philox(counter = {i/2 lo, i/2 hi, r lo, r hi}, key = {s lo, s hi}), taking
 * the first (even i) or second (odd i) 64-bit half of the output block and
 * keeping its top 53 bits. The mapping is platform independent.
 */
class ReplicaStream
{
  public:
    explicit ReplicaStream(SeedSpec seed) : seed_(seed) {}

    //! 64 random bits for draw index i
    std::uint64_t bits(std::uint64_t i) const;

    //! Draws 2b and 2b+1 from one generator block
    std::array<std::uint64_t, 2> block_bits(std::uint64_t b) const;

    static double to_unit(std::uint64_t x)
    {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    //! Uniform double in [0, 1) for draw index i
    double uniform(std::uint64_t i) const { return to_unit(bits(i)); }

    SeedSpec seed() const { return seed_; }

  private:
    SeedSpec seed_;
};

}  // namespace skewspec
