#pragma once

#include <functional>
#include <vector>

#include "switchopt/errors.hpp"

namespace switchopt {

using ScalarFn = std::function<double(double)>;

struct RootOptions {
    const char* name = "equation";  // surfaced by RootNotBracketed
    double f_scale = 0.0;           // optional residual scale for early exit
    int max_iter = 200;
};

// Root of f in [lo, hi] given f(lo) f(hi) <= 0. Bisection refined by secant
// steps; the bracket is never abandoned. Terminates when the interval width
// falls below 1e-14 * (1 + |root|) or |f| <= 1e-12 * (1 + f_scale).
double find_root_bracketed(const ScalarFn& f, double lo, double hi,
                           RootOptions opt = {});

// Same, but the initial interval is first split at the interior points of
// `splits` (payoff step locations) so no candidate bracket straddles a kink;
// the sub-interval carrying the sign change is searched.
double find_root_split(const ScalarFn& f, double lo, double hi,
                       const std::vector<double>& splits, RootOptions opt = {});

// Geometric bracket expansion (factor 2, up to 60 steps). Both return an
// endpoint at which f has the opposite sign of f(anchor), throwing
// RootNotBracketed when the budget is exhausted.
double bracket_up(const ScalarFn& f, double anchor, double f_anchor,
                  const char* name);
double bracket_down(const ScalarFn& f, double anchor, double f_anchor,
                    const char* name);

}  // namespace switchopt
