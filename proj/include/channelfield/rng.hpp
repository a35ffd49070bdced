#pragma once

#include <array>
#include <cstdint>

namespace channelfield {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Round constants, round count and output order are pinned by the known-answer
// tests; changing any of them invalidates golden files produced by the CLI.
//
// A (seed, stream) pair selects an independent 2^64-block stream, so ensemble
// workers can draw from disjoint streams without coordination.
class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0u, 0u, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)} {}

    std::uint32_t next_u32() {
        if (idx_ == 4) refill();
        return out_[idx_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on the open interval (0,1).
    double u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) *
               (1.0 / 9007199254740992.0);
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    double exp1();                 // Exp(1), strictly positive
    double pareto(double alpha);   // Par(alpha) on [1,inf)
    bool coin() { return (next_u32() & 1u) != 0; }

    // Exact Poisson(mean) count via products of uniforms; large means are
    // split into independent chunks, which leaves the law unchanged.
    std::uint64_t poisson(double mean);

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> out_{};
    int idx_ = 4;
};

}  // namespace channelfield
