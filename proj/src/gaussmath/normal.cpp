#include "ael/gaussmath/normal.hpp"

#include <cmath>

namespace ael::gaussmath {

double norm_pdf(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double norm_sf(double x) noexcept {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

}  // namespace ael::gaussmath
