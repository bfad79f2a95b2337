#pragma once

#include <optional>
#include <vector>

#include "switchopt/model.hpp"
#include "switchopt/rootfind.hpp"

namespace switchopt {

// Validated problem instance bundled with derived quantities every solver
// needs. Immutable after make(); cheap to copy by const reference.
struct Context {
    ProblemData data;
    FundamentalRoots roots;
    double h0 = 0.0;                  // h(0+) = payoff constant
    std::vector<double> step_locs;    // sorted payoff step locations

    static Context make(const ProblemData& data);

    double m() const { return roots.m; }
    double n() const { return roots.n; }
    double r() const { return data.market.r; }
    double s2() const { return data.market.sigma2(); }
    double span() const { return s2() * (n() - m()); }
    double K1() const { return data.costs.K1; }
    double K0() const { return data.costs.K0; }
    double K() const { return data.costs.K; }

    double h(double x) const { return data.payoff(x); }
    double M(double lo, double hi, double L) const {
        return weighted_integral(IntegralKind::M, roots, data.payoff, lo, hi, L);
    }
    double N(double lo, double hi, double L) const {
        return weighted_integral(IntegralKind::N, roots, data.payoff, lo, hi, L);
    }
    double cross(double L) const { return crossing(data.payoff, L); }
    double Rh(double x) const {
        return resolvent_direct(roots, data.market, data.payoff, x);
    }
    double Rh1(double x) const {
        return resolvent_direct_deriv(roots, data.market, data.payoff, x);
    }
    double Rh2(double x) const {
        return resolvent_direct_deriv2(roots, data.market, data.payoff, x);
    }
};

namespace systems {

// Root of f = 0 inside (lo, hi) splitting at payoff steps.
double solve_on(const Context& ctx, const ScalarFn& f, double lo, double hi,
                const char* name);

// Threshold of the open-mode abandonment block: unique root delta of
// int_delta^inf s^{-n-1} [h + rK] ds = 0, present iff h(0) + rK < 0.
std::optional<double> delta_dagger(const Context& ctx);

// Root alpha of int_0^alpha s^{-m-1} [h - rK1] ds = 0 (single switch-in
// boundary when waiting is free of abandonment).
double solve_alpha_single(const Context& ctx);

struct ZetaAlpha {
    double zeta, alpha;
};

// Abandon-or-enter system
//   f1 = m int_0^alpha s^{-m-1}[h - rK1] ds - rK zeta^{-m} = 0
//   f2 = n int_alpha^inf s^{-n-1}[h - rK1] ds + rK zeta^{-n} = 0
// solved by the nested reduction: alpha = ell(zeta) from f1, then the
// strictly increasing map zeta -> f2(zeta, ell(zeta)).
struct EnterOrQuitSystem {
    explicit EnterOrQuitSystem(const Context& ctx);
    double f1(double zeta, double alpha) const;
    double f2(double zeta, double alpha) const;
    double ell(double zeta) const;
    ZetaAlpha solve() const;

    const Context* ctx;
    double zeta_hat;   // diagonal sign change of f1(z, z)
    double alpha_bar;  // crossing of h - rK1
};

struct BetaAlpha {
    double beta, alpha;
};

// Perpetual switching system
//   m int_beta^alpha s^{-m-1} h ds + rK0 beta^{-m} + rK1 alpha^{-m} = 0
//   n int_beta^alpha s^{-n-1} h ds + rK0 beta^{-n} + rK1 alpha^{-n} = 0
// alpha = alpha_of(beta) from the first equation; the substituted second
// equation is strictly increasing in beta below the crossing of h + rK0.
struct SwitchingPairSystem {
    explicit SwitchingPairSystem(const Context& ctx);
    double phi1(double beta, double alpha) const;
    double phi2(double beta, double alpha) const;
    double alpha_of(double beta) const;
    BetaAlpha solve() const;

    const Context* ctx;
    double beta_bar;   // crossing of h + rK0
    double alpha_bar;  // crossing of h - rK1
};

struct DeltaAlpha {
    double delta_dagger, alpha;
};

// Abandon-when-open system: delta_dagger plus the root alpha of
//   m int_dd^alpha s^{-m-1}[h - rK1] ds + r(K1 + K) dd^{-m} = 0.
DeltaAlpha solve_abandon_open(const Context& ctx);

// Interior maximum of g1 = w0 - w1 - K0 on (lo, alpha): the sign change of
//   m x^{m-1} int_x^a s^{-m-1}[h-rK1] ds - n x^{n-1} int_x^a s^{-n-1}[h-rK1] ds.
double g1_peak(const Context& ctx, double lo, double alpha);

struct DeltaGamma {
    double delta, gamma;
};

// Production-pocket system given the outer switching pair (beta, alpha):
//   F1 = m int_delta^gamma s^{-m-1}[h + rK0] ds + r(K - K0) delta^{-m} = 0
//   F2 = n int_delta^gamma s^{-n-1}[h + rK0] ds + r(K - K0) delta^{-n}
//        + n int_beta^inf s^{-n-1}[h + rK0] ds = 0
struct PocketSystem {
    PocketSystem(const Context& ctx, double beta);
    double F1(double delta, double gamma) const;
    double F2(double delta, double gamma) const;
    double ell(double gamma) const;  // delta with F1 = 0
    DeltaGamma solve() const;

    const Context* ctx;
    double beta;
    double tail;  // n int_beta^inf s^{-n-1}[h + rK0] ds
};

struct DualAbandon {
    double delta_dagger, zeta, alpha;
};

// Abandonment from both modes:
//   G1 = m int_dd^a s^{-m-1}[h-rK1] ds + r(K1+K) dd^{-m} - rK zeta^{-m} = 0
//   G2 = -n int_dd^a s^{-n-1}[h-rK1] ds - r(K1+K) dd^{-n} + rK zeta^{-n} = 0
// zeta = ell(alpha) is closed-form from G2; alpha solves the substituted G1.
struct DualAbandonSystem {
    explicit DualAbandonSystem(const Context& ctx);
    double G1(double zeta, double alpha) const;
    double G2(double zeta, double alpha) const;
    double ell(double alpha) const;
    double H1(double alpha) const;  // G2 on the diagonal zeta = alpha
    DualAbandon solve() const;

    const Context* ctx;
    double dd;         // delta_dagger
    double alpha_hat;  // root of H1: lower end of the ell domain
};

struct FivePoint {
    double zeta, delta, gamma, beta, alpha;
};

// Full five-boundary system given the switching pair (beta, alpha):
//   G4 fixes zeta in closed form, G3 defines delta = ell(gamma), and
//   G5(zeta, ell(gamma), gamma) = 0 pins gamma.
struct FiveBoundarySystem {
    FiveBoundarySystem(const Context& ctx, double beta, double alpha);
    double G3(double delta, double gamma) const;
    double G5(double delta, double gamma) const;
    double ell(double gamma) const;
    FivePoint solve() const;

    const Context* ctx;
    double beta, alpha;
    double zeta;       // closed form from G4
    double gamma_hat;  // diagonal sign change of G3
};

// K1 level at which the dual-abandonment boundaries merge (zeta = dd):
// outer root in K1 of K1 -> G2(dd, dd, alpha(K1); K1) with alpha(K1) solving
// the pinned G1; the map is strictly decreasing.
struct MergedCostSystem {
    explicit MergedCostSystem(const Context& ctx);
    double alpha_of_k1(double k1) const;
    double phi(double k1) const;
    double solve() const;

    const Context* ctx;
    double dd;
};

}  // namespace systems
}  // namespace switchopt
