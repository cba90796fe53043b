#pragma once

#include <cmath>
#include <cstdint>

#include "gaussmp/errors.hpp"

namespace gaussmp {

namespace detail {

inline double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;  // Richardson correction
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson extrapolation; `tol` is an absolute
// tolerance on the result. The integrand must be finite on [a, b].
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (!(a <= b)) throw Error("integrate: need a <= b");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw Error("integrate: integrand is not finite on [a, b]");
    const double whole = detail::simpson_slice(a, fa, b, fb, fm);
    return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace gaussmp
