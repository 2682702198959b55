#include "skewspec/rng.hpp"

namespace skewspec
{
namespace
{
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi)
{
    std::uint64_t const prod = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(prod);
    hi = static_cast<std::uint32_t>(prod >> 32);
}
}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key)
{
    for (int round = 0; round < rounds; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMulA, ctr[0], lo0, hi0);
        mulhilo(kMulB, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t ReplicaStream::bits(std::uint64_t i) const
{
    return this->block_bits(i >> 1)[i & 1u];
}

std::array<std::uint64_t, 2> ReplicaStream::block_bits(std::uint64_t blk) const
{
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(blk),
                            static_cast<std::uint32_t>(blk >> 32),
                            static_cast<std::uint32_t>(seed_.replica_index),
                            static_cast<std::uint32_t>(seed_.replica_index >> 32)};
    Philox4x32::Key key{static_cast<std::uint32_t>(seed_.master_seed),
                        static_cast<std::uint32_t>(seed_.master_seed >> 32)};
    auto const out = Philox4x32::block(ctr, key);
    return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
            (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
}

}  // namespace skewspec
