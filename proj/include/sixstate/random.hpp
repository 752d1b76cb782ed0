// Counter-based random numbers (Philox4x32-10).
//
// Every signal of a protocol session owns its own counter range, so draws do not
// depend on processing order and sessions are reproducible from the seed alone.

#pragma once

#include <array>
#include <cstdint>

namespace sixstate {

class Philox4x32 {
public:
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static counter_type generate(counter_type ctr, key_type key)
    {
        ctr = round(ctr, key);
        for (int r = 1; r < 10; ++r) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
            ctr = round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static counter_type round(const counter_type& c, const key_type& k)
    {
        const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Uniform doubles in [0, 1) for one substream (e.g. one signal) of a seeded session.
class SubstreamRng {
public:
    SubstreamRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {}

    double uniform()
    {
        if (used_ == 4) refill();
        const std::uint64_t hi = words_[used_++];
        const std::uint64_t lo = words_[used_++];
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    /// Integer in [0, n).
    int below(int n)
    {
        const int v = static_cast<int>(uniform() * n);
        return v < n ? v : n - 1;
    }

private:
    void refill()
    {
        words_ = Philox4x32::generate({static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                                       block_++, 0u},
                                      key_);
        used_ = 0;
    }

    Philox4x32::key_type key_;
    std::uint64_t stream_;
    std::uint32_t block_ = 0;
    Philox4x32::counter_type words_{};
    int used_ = 4;
};

} // namespace sixstate
