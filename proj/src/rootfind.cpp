#include "switchopt/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace switchopt {

namespace {

bool same_sign(double a, double b) { return (a > 0.0) == (b > 0.0); }

}  // namespace

double find_root_bracketed(const ScalarFn& f, double lo, double hi,
                           RootOptions opt) {
    double a = lo, b = hi;
    if (a > b) std::swap(a, b);
    double fa = f(a);
    if (fa == 0.0) return a;
    double fb = f(b);
    if (fb == 0.0) return b;
    if (same_sign(fa, fb)) throw RootNotBracketed(opt.name);

    const double ftol = 1e-12 * (1.0 + opt.f_scale);
    bool force_bisect = false;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        const double width = b - a;
        const double mid = 0.5 * (a + b);
        if (width <= 1e-14 * (1.0 + std::fabs(mid))) return mid;

        double x = mid;
        if (!force_bisect) {
            const double xs = (a * fb - b * fa) / (fb - fa);
            const double margin = 1e-3 * width;
            if (std::isfinite(xs) && xs > a + margin && xs < b - margin)
                x = xs;
        }
        // Alternate: a secant step must be followed by one bisection unless
        // it already shrank the bracket well, so kinked maps cannot stall.
        force_bisect = !force_bisect;

        const double fx = f(x);
        if (fx == 0.0 || (opt.f_scale > 0.0 && std::fabs(fx) <= ftol &&
                          width <= 1e-9 * (1.0 + std::fabs(mid))))
            return x;
        if (same_sign(fx, fa)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return 0.5 * (a + b);
}

double find_root_split(const ScalarFn& f, double lo, double hi,
                       const std::vector<double>& splits, RootOptions opt) {
    double a = lo;
    double fa = f(a);
    if (fa == 0.0) return a;
    for (double s : splits) {
        if (!(s > a && s < hi)) continue;
        const double fs = f(s);
        if (fs == 0.0) return s;
        if (!same_sign(fa, fs)) return find_root_bracketed(f, a, s, opt);
        a = s;
        fa = fs;
    }
    return find_root_bracketed(f, a, hi, opt);
}

double bracket_up(const ScalarFn& f, double anchor, double f_anchor,
                  const char* name) {
    double hi = anchor > 0.0 ? 2.0 * anchor : 1.0;
    for (int i = 0; i < 60; ++i) {
        const double fhi = f(hi);
        if (fhi == 0.0 || !same_sign(f_anchor, fhi)) return hi;
        hi *= 2.0;
    }
    throw RootNotBracketed(name);
}

double bracket_down(const ScalarFn& f, double anchor, double f_anchor,
                    const char* name) {
    double lo = 0.5 * anchor;
    for (int i = 0; i < 60; ++i) {
        const double flo = f(lo);
        if (flo == 0.0 || !same_sign(f_anchor, flo)) return lo;
        lo *= 0.5;
    }
    throw RootNotBracketed(name);
}

}  // namespace switchopt
