#include "ael/gaussmath/roots.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ael/errors.hpp"

namespace ael::gaussmath {

Bracket Bracket::make(const ScalarFn& f, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("bracket requires lo < hi");
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!(b.f_lo * b.f_hi < 0.0))
        throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    return b;
}

double find_root(const ScalarFn& f, const Bracket& bracket, double tol) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    if (!(fa * fb < 0.0)) throw NoSignChange("bracket endpoints do not change sign");

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < kRootMaxIter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw NoConvergence("find_root: iteration cap reached");
}

double find_root(const ScalarFn& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw DomainError("bracket requires lo < hi");
    const double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    const double f_hi = f(hi);
    if (f_hi == 0.0) return hi;
    if (!(f_lo * f_hi < 0.0))
        throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    return find_root(f, Bracket{lo, hi, f_lo, f_hi}, tol);
}

MaximizeResult maximize_concave(const ScalarFn& f, const ScalarFn& f_prime, double lo, double hi,
                                double tol) {
    if (!(lo < hi)) throw DomainError("maximize_concave requires lo < hi");
    std::vector<double> xs(kConcavityGrid + 1);
    std::vector<double> ds(kConcavityGrid + 1);
    for (int i = 0; i <= kConcavityGrid; ++i) {
        xs[i] = (i == kConcavityGrid) ? hi : lo + (hi - lo) * i / kConcavityGrid;
        ds[i] = f_prime(xs[i]);
    }
    // Sign changes of f' from + to - are maxima, - to + are minima; any
    // change beyond the first means the objective is not concave.
    std::vector<int> changes;
    for (int i = 0; i < kConcavityGrid; ++i)
        if ((ds[i] > 0.0 && ds[i + 1] <= 0.0) || (ds[i] < 0.0 && ds[i + 1] >= 0.0))
            if (!(ds[i + 1] == 0.0 && i + 1 == kConcavityGrid)) changes.push_back(i);

    auto root_in = [&](int i) {
        if (ds[i + 1] == 0.0) return xs[i + 1];
        return find_root(f_prime, Bracket{xs[i], xs[i + 1], ds[i], ds[i + 1]}, tol);
    };

    if (changes.size() > 1) {
        // Smallest stationary point that is a local maximum.
        double smallest = lo;
        for (int i : changes)
            if (ds[i] > 0.0) {
                smallest = root_in(i);
                break;
            }
        throw NonConcave("derivative changes sign " + std::to_string(changes.size()) +
                             " times on the diagnostic grid",
                         smallest, static_cast<int>(changes.size()));
    }
    if (ds.front() <= 0.0 && (changes.empty() || ds[changes.front()] < 0.0)) {
        if (!changes.empty())
            throw NonConcave("derivative increases through zero", lo, 1);
        return {lo, f(lo)};
    }
    if (changes.empty()) return {hi, f(hi)};
    const double x = root_in(changes.front());
    return {x, f(x)};
}

}  // namespace ael::gaussmath
