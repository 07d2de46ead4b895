#pragma once

#include <functional>

namespace ael::gaussmath {

using ScalarFn = std::function<double(double)>;

/// Sign-changing interval for a scalar function with cached endpoint values.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    /// Evaluates f at both endpoints. Throws NoSignChange unless
    /// f(lo)·f(hi) < 0, DomainError unless lo < hi.
    static Bracket make(const ScalarFn& f, double lo, double hi);
};

inline constexpr int kRootMaxIter = 200;

/// Brent's method: bisection safeguarded inverse-quadratic / secant steps.
///
/// Stops when the bracket half-width drops below tol (plus 2 ulp of the
/// iterate) or f vanishes. Throws NoConvergence after kRootMaxIter steps.
double find_root(const ScalarFn& f, const Bracket& bracket, double tol = 1e-15);

/// Convenience overload building the bracket first. An endpoint where f is
/// exactly zero is returned as the root.
double find_root(const ScalarFn& f, double lo, double hi, double tol = 1e-15);

struct MaximizeResult {
    double x;
    double value;
};

inline constexpr int kConcavityGrid = 32;

/// Maximizes f on [lo, hi] through the zero of its derivative.
///
/// f_prime is sampled on a kConcavityGrid-interval diagnostic grid; more than
/// one sign change raises NonConcave (carrying the smallest located root).
/// Returns lo when f'(lo) <= 0 and hi when f'(hi) >= 0.
MaximizeResult maximize_concave(const ScalarFn& f, const ScalarFn& f_prime, double lo, double hi,
                                double tol = 1e-15);

}  // namespace ael::gaussmath
