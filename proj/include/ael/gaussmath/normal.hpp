#pragma once

namespace ael::gaussmath {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2π)
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Standard normal density φ(x) = exp(-x²/2)/sqrt(2π).
double norm_pdf(double x) noexcept;

/// Standard normal CDF Φ(x).
///
/// Evaluated as erfc(-x/√2)/2 so that the left tail is computed directly from
/// the complementary function (no 1 - small cancellation). Absolute error is
/// below 1e-14 on the whole real line.
double norm_cdf(double x) noexcept;

/// Upper tail 1 - Φ(x), accurate in relative terms for large positive x.
double norm_sf(double x) noexcept;

}  // namespace ael::gaussmath
