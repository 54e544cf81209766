#pragma once

// Counter-based random numbers: Philox4x64-10.  A pure function of
// (counter, key), so any event index can be generated independently of all
// others and in any order -- the property the photon sampler relies on for
// deterministic, parallelizable streams.

#include <array>
#include <cstdint>

namespace twoslit {

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

}  // namespace detail

struct Philox4x64 {
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

    /// One 10-round block: 256 bits of output per (counter, key).
    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::uint64_t key0, std::uint64_t key1) {
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, lo0, hi1, lo1;
            detail::mulhilo64(kMul0, ctr[0], hi0, lo0);
            detail::mulhilo64(kMul1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key0, lo1, hi0 ^ ctr[3] ^ key1, lo0};
            key0 += kWeyl0;
            key1 += kWeyl1;
        }
        return ctr;
    }
};

/// The index-th word of the stream identified by (seed, stream).
inline std::uint64_t philox_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return Philox4x64::block({index, stream, 0, 0}, seed, 0)[0];
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double philox_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(philox_word(seed, stream, index) >> 11) * 0x1.0p-53;
}

}  // namespace twoslit
