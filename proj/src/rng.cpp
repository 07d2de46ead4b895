#include "ael/rng.hpp"

#include <cmath>
#include <numbers>

namespace ael {

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

DrawStream::DrawStream(std::uint64_t seed, std::uint64_t draw_index) noexcept
    : state_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (draw_index * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t DrawStream::next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double DrawStream::uniform() noexcept {
    // 53 random bits, shifted off zero.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double DrawStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

double DrawStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace ael
