#pragma once

#include <limits>
#include <vector>

#include "switchopt/errors.hpp"

namespace switchopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Market dynamics dX = b X dt + sqrt(2) sigma X dW, discounted at rate r.
struct MarketParams {
    double b = 0.0;      // drift rate (1/time)
    double sigma = 0.0;  // volatility scale (1/sqrt(time)), nonzero
    double r = 0.0;      // discount rate (1/time), positive

    double sigma2() const { return sigma * sigma; }
    void validate() const;
};

// Exponents m < 0 < n of the homogeneous solutions x^m, x^n of
// sigma^2 x^2 w'' + b x w' - r w = 0.
struct FundamentalRoots {
    double m = 0.0;
    double n = 0.0;
};

FundamentalRoots compute_roots(const MarketParams& market);

struct PowerTerm {
    double c = 0.0;      // weight, >= 0
    double theta = 0.0;  // exponent
};

struct StepTerm {
    double j = 0.0;  // jump size, >= 0
    double a = 0.0;  // location, > 0; contributes j * 1{x >= a}
};

// Running payoff h(x) = sum_i c_i x^{theta_i} + c0 + sum_k j_k 1{x >= a_k}.
// Increasing and right-continuous by construction; h(0) := c0.
struct PayoffSpec {
    std::vector<PowerTerm> powers;
    double constant = 0.0;
    std::vector<StepTerm> steps;

    double operator()(double x) const;
    double value_at_zero() const { return constant; }

    // Step locations in increasing order (solver brackets split on these).
    std::vector<double> step_locations() const;

    // Family-level checks: weights nonnegative, every retained power has
    // theta > 0, and at least one power term is present so h(x) -> inf.
    void validate() const;
    // Integrability gate: every exponent lies strictly inside (m, n).
    void validate_against(const FundamentalRoots& roots) const;
};

struct CostParams {
    double K1 = 0.0;  // closed -> open switch cost, > 0
    double K0 = 0.0;  // open -> closed switch cost, > 0
    double K = 0.0;   // abandonment cost (negative = salvage)

    void validate() const;
};

struct ProblemData {
    MarketParams market;
    CostParams costs;
    PayoffSpec payoff;

    // Throws InvalidProblem on any violated invariant; returns the roots so
    // callers validate and fetch them in one step.
    FundamentalRoots validate() const;
};

enum class IntegralKind { M, N };

// Closed-form evaluation of int_lo^hi s^{-k-1} [h(s) + L] ds with k = m for
// kind M (lo may be 0, hi finite) and k = n for kind N (hi may be +inf,
// lo > 0). Throws DivergentIntegral when a requested endpoint makes a term
// non-integrable.
double weighted_integral(IntegralKind kind, const FundamentalRoots& roots,
                         const PayoffSpec& h, double lo, double hi, double L);

// Same integral together with the sum of absolute per-term contributions,
// used as the scale for residual tolerances.
struct IntegralParts {
    double value = 0.0;
    double abs_sum = 0.0;
};
IntegralParts weighted_integral_parts(IntegralKind kind,
                                      const FundamentalRoots& roots,
                                      const PayoffSpec& h, double lo,
                                      double hi, double L);

// Expected total discounted payoff R_h(x) = E int_0^inf e^{-rt} h(X_t) dt,
// assembled from the two weighted integrals.
double resolvent(const FundamentalRoots& roots, const MarketParams& market,
                 const PayoffSpec& h, double x);
double resolvent_deriv(const FundamentalRoots& roots,
                       const MarketParams& market, const PayoffSpec& h,
                       double x);

// Per-term closed forms for R_h and its first two derivatives. A power term
// c x^theta contributes c x^theta / (r - b theta - sigma^2 theta (theta-1)),
// the constant contributes c0 / r, and a step splits at its location. The
// second derivative jumps at step locations; the value returned there is the
// right limit.
double resolvent_direct(const FundamentalRoots& roots,
                        const MarketParams& market, const PayoffSpec& h,
                        double x);
double resolvent_direct_deriv(const FundamentalRoots& roots,
                              const MarketParams& market, const PayoffSpec& h,
                              double x);
double resolvent_direct_deriv2(const FundamentalRoots& roots,
                               const MarketParams& market, const PayoffSpec& h,
                               double x);

// inf{x > 0 : h(x) + L >= 0}; 0 when h(0) + L >= 0. h is increasing so the
// set is a half line; located by predicate bisection (exact across steps).
double crossing(const PayoffSpec& h, double L);

}  // namespace switchopt
