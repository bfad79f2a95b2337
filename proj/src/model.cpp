#include "switchopt/model.hpp"

#include <algorithm>
#include <cmath>

namespace switchopt {

void MarketParams::validate() const {
    if (!std::isfinite(b) || !std::isfinite(sigma) || !std::isfinite(r))
        throw InvalidProblem("market parameters must be finite");
    if (sigma == 0.0) throw InvalidProblem("sigma must be nonzero");
    if (r <= 0.0) throw InvalidProblem("r must be positive");
}

FundamentalRoots compute_roots(const MarketParams& market) {
    const double s2 = market.sigma2();
    const double q = market.b - s2;
    const double disc = std::sqrt(q * q + 4.0 * s2 * market.r);
    // One root is computed without cancellation, the other from the product
    // sigma^2 m n = -r so the identity holds to machine precision.
    FundamentalRoots roots;
    if (q >= 0.0) {
        roots.m = (-q - disc) / (2.0 * s2);
        roots.n = (-market.r / s2) / roots.m;
    } else {
        roots.n = (-q + disc) / (2.0 * s2);
        roots.m = (-market.r / s2) / roots.n;
    }
    return roots;
}

double PayoffSpec::operator()(double x) const {
    double v = constant;
    for (const auto& p : powers) v += p.c * std::pow(x, p.theta);
    for (const auto& s : steps)
        if (x >= s.a) v += s.j;
    return v;
}

std::vector<double> PayoffSpec::step_locations() const {
    std::vector<double> locs;
    locs.reserve(steps.size());
    for (const auto& s : steps)
        if (s.j > 0.0) locs.push_back(s.a);
    std::sort(locs.begin(), locs.end());
    return locs;
}

void PayoffSpec::validate() const {
    bool has_growth = false;
    for (const auto& p : powers) {
        if (!std::isfinite(p.c) || !std::isfinite(p.theta))
            throw InvalidProblem("power term must be finite");
        if (p.c < 0.0) throw InvalidProblem("power weights must be >= 0");
        if (p.c > 0.0 && p.theta <= 0.0)
            throw InvalidProblem(
                "power exponents must be positive (theta <= 0 makes h "
                "non-increasing or h(0) infinite)");
        if (p.c > 0.0 && p.theta > 0.0) has_growth = true;
    }
    if (!has_growth)
        throw InvalidProblem(
            "payoff needs at least one positive-weight power term so that "
            "h(x) -> inf");
    if (!std::isfinite(constant))
        throw InvalidProblem("payoff constant must be finite");
    for (const auto& s : steps) {
        if (!std::isfinite(s.j) || !std::isfinite(s.a))
            throw InvalidProblem("step term must be finite");
        if (s.j < 0.0) throw InvalidProblem("step jumps must be >= 0");
        if (s.a <= 0.0) throw InvalidProblem("step locations must be > 0");
    }
}

void PayoffSpec::validate_against(const FundamentalRoots& roots) const {
    for (const auto& p : powers) {
        if (p.c == 0.0) continue;
        if (!(roots.m < p.theta && p.theta < roots.n))
            throw InvalidProblem("power exponent outside (m, n)");
    }
}

void CostParams::validate() const {
    if (!std::isfinite(K1) || !std::isfinite(K0) || !std::isfinite(K))
        throw InvalidProblem("cost parameters must be finite");
    if (K1 <= 0.0) throw InvalidProblem("K1 must be positive");
    if (K0 <= 0.0) throw InvalidProblem("K0 must be positive");
}

FundamentalRoots ProblemData::validate() const {
    market.validate();
    costs.validate();
    payoff.validate();
    FundamentalRoots roots = compute_roots(market);
    payoff.validate_against(roots);
    return roots;
}

namespace {

// pow with the analytic endpoint limits used by the antiderivatives:
// 0^positive = 0 and inf^negative = 0; other degenerate combinations are
// excluded by the divergence checks before this is called.
double pow_lim(double x, double e) {
    if (x == 0.0) return e > 0.0 ? 0.0 : kInf;
    if (x == kInf) return e < 0.0 ? 0.0 : kInf;
    return std::pow(x, e);
}

}  // namespace

IntegralParts weighted_integral_parts(IntegralKind kind,
                                      const FundamentalRoots& roots,
                                      const PayoffSpec& h, double lo,
                                      double hi, double L) {
    const double k = (kind == IntegralKind::M) ? roots.m : roots.n;
    if (!(lo >= 0.0) || std::isnan(hi))
        throw DivergentIntegral("integral endpoints must satisfy 0 <= lo");
    if (kind == IntegralKind::M && hi == kInf)
        throw DivergentIntegral("kind M integral diverges at +inf");
    if (kind == IntegralKind::N && lo == 0.0)
        throw DivergentIntegral("kind N integral diverges at 0");

    IntegralParts out;
    if (lo == hi) return out;

    auto add = [&out](double term) {
        out.value += term;
        out.abs_sum += std::fabs(term);
    };

    // Power term: c s^{theta-k-1} integrates to c s^{theta-k}/(theta-k).
    for (const auto& p : h.powers) {
        if (p.c == 0.0) continue;
        const double e = p.theta - k;
        add(p.c * (pow_lim(hi, e) - pow_lim(lo, e)) / e);
    }
    // Constant + shift: (c0 + L) s^{-k-1} integrates to -(c0+L) s^{-k}/k.
    const double c = h.constant + L;
    if (c != 0.0) add(-c * (pow_lim(hi, -k) - pow_lim(lo, -k)) / k);
    // Step: j over [max(lo, a), hi).
    for (const auto& s : h.steps) {
        if (s.j == 0.0) continue;
        const double a = std::max(lo, s.a);
        if (a >= hi) continue;
        add(-s.j * (pow_lim(hi, -k) - pow_lim(a, -k)) / k);
    }
    return out;
}

double weighted_integral(IntegralKind kind, const FundamentalRoots& roots,
                         const PayoffSpec& h, double lo, double hi, double L) {
    return weighted_integral_parts(kind, roots, h, lo, hi, L).value;
}

double resolvent(const FundamentalRoots& roots, const MarketParams& market,
                 const PayoffSpec& h, double x) {
    const double im = weighted_integral(IntegralKind::M, roots, h, 0.0, x, 0.0);
    const double in = weighted_integral(IntegralKind::N, roots, h, x, kInf, 0.0);
    const double denom = market.sigma2() * (roots.n - roots.m);
    return (std::pow(x, roots.m) * im + std::pow(x, roots.n) * in) / denom;
}

double resolvent_deriv(const FundamentalRoots& roots,
                       const MarketParams& market, const PayoffSpec& h,
                       double x) {
    const double im = weighted_integral(IntegralKind::M, roots, h, 0.0, x, 0.0);
    const double in = weighted_integral(IntegralKind::N, roots, h, x, kInf, 0.0);
    const double denom = market.sigma2() * (roots.n - roots.m);
    return (roots.m * std::pow(x, roots.m - 1.0) * im +
            roots.n * std::pow(x, roots.n - 1.0) * in) /
           denom;
}

namespace {

// d-th derivative (d = 0, 1, 2) of the per-term closed form of R_h at x.
double resolvent_direct_d(const FundamentalRoots& roots,
                          const MarketParams& market, const PayoffSpec& h,
                          double x, int d) {
    const double s2 = market.sigma2();
    const double r = market.r;
    const double m = roots.m;
    const double n = roots.n;
    const double span = s2 * (n - m);

    auto dpow = [d](double coef, double e, double x_) {
        // d-th derivative of coef * x^e.
        double c = coef;
        double ee = e;
        for (int i = 0; i < d; ++i) {
            c *= ee;
            ee -= 1.0;
        }
        return c == 0.0 ? 0.0 : c * std::pow(x_, ee);
    };

    double v = 0.0;
    for (const auto& p : h.powers) {
        if (p.c == 0.0) continue;
        const double denom = r - market.b * p.theta -
                             s2 * p.theta * (p.theta - 1.0);
        v += dpow(p.c / denom, p.theta, x);
    }
    if (d == 0) v += h.constant / r;
    for (const auto& s : h.steps) {
        if (s.j == 0.0) continue;
        if (x < s.a) {
            v += dpow(s.j * std::pow(s.a, -n) / (n * span), n, x);
        } else {
            if (d == 0) v += s.j / r;
            v += dpow(s.j * std::pow(s.a, -m) / (m * span), m, x);
        }
    }
    return v;
}

}  // namespace

double resolvent_direct(const FundamentalRoots& roots,
                        const MarketParams& market, const PayoffSpec& h,
                        double x) {
    return resolvent_direct_d(roots, market, h, x, 0);
}

double resolvent_direct_deriv(const FundamentalRoots& roots,
                              const MarketParams& market, const PayoffSpec& h,
                              double x) {
    return resolvent_direct_d(roots, market, h, x, 1);
}

double resolvent_direct_deriv2(const FundamentalRoots& roots,
                               const MarketParams& market, const PayoffSpec& h,
                               double x) {
    return resolvent_direct_d(roots, market, h, x, 2);
}

double crossing(const PayoffSpec& h, double L) {
    if (h.value_at_zero() + L >= 0.0) return 0.0;
    double lo = 1.0;
    while (h(lo) + L >= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) return 0.0;
    }
    double hi = std::max(1.0, 2.0 * lo);
    int budget = 0;
    while (h(hi) + L < 0.0) {
        hi *= 2.0;
        if (++budget > 2000) return kInf;  // unreachable: h(x) -> inf
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) + L >= 0.0 ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace switchopt
