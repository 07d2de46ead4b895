#pragma once

#include <cstdint>

namespace ael {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based random stream: (seed, draw_index) fully determines the
/// sequence of variates, so any draw can be regenerated independently of the
/// others and sharding across workers does not change results.
class DrawStream {
public:
    DrawStream(std::uint64_t seed, std::uint64_t draw_index) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept;
    /// Standard normal (Box-Muller, second variate cached).
    double normal() noexcept;

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ael
