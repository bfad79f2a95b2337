#include "switchopt/systems.hpp"

#include <cmath>

namespace switchopt {

Context Context::make(const ProblemData& data) {
    Context ctx;
    ctx.data = data;
    ctx.roots = data.validate();
    ctx.h0 = data.payoff.value_at_zero();
    ctx.step_locs = data.payoff.step_locations();
    return ctx;
}

namespace systems {

double solve_on(const Context& ctx, const ScalarFn& f, double lo, double hi,
                const char* name) {
    RootOptions opt;
    opt.name = name;
    return find_root_split(f, lo, hi, ctx.step_locs, opt);
}

std::optional<double> delta_dagger(const Context& ctx) {
    const double rK = ctx.r() * ctx.K();
    if (!(ctx.h0 + rK < 0.0)) return std::nullopt;
    auto d = [&ctx, rK](double x) { return ctx.N(x, kInf, rK); };
    // The map increases from -inf, crosses zero once below the crossing of
    // h + rK and stays positive beyond it.
    double hi = ctx.cross(rK);
    double fhi = d(hi);
    if (fhi == 0.0) return hi;
    if (fhi < 0.0) hi = bracket_up(d, hi, fhi, "delta_dagger"), fhi = d(hi);
    const double lo = bracket_down(d, hi, fhi, "delta_dagger");
    return solve_on(ctx, d, lo, hi, "delta_dagger");
}

double solve_alpha_single(const Context& ctx) {
    const double rK1 = ctx.r() * ctx.K1();
    auto e = [&ctx, rK1](double a) { return ctx.M(0.0, a, -rK1); };
    const double lo = ctx.cross(-rK1);
    if (lo == 0.0)
        throw PreconditionViolated("h(0) >= rK1: no waiting boundary");
    const double flo = e(lo);
    if (flo == 0.0) return lo;
    if (flo > 0.0) throw RootNotBracketed("alpha (switch-in)");
    const double hi = bracket_up(e, lo, flo, "alpha (switch-in)");
    return solve_on(ctx, e, lo, hi, "alpha (switch-in)");
}

// ---------------------------------------------------------------------------

EnterOrQuitSystem::EnterOrQuitSystem(const Context& c) : ctx(&c) {
    const double r = c.r();
    if (!(c.K() < 0.0))
        throw PreconditionViolated("enter-or-quit system needs K < 0");
    if (!(c.h0 + r * (c.K() - c.K1()) < 0.0))
        throw PreconditionViolated("enter-or-quit system needs h(0) < rK1 - rK");
    alpha_bar = c.cross(-r * c.K1());
    const double L = r * (c.K() - c.K1());
    const double zeta_lower = c.cross(L);
    auto diag = [&c, L](double z) { return c.m() * c.M(0.0, z, L); };
    const double fz = diag(zeta_lower);
    if (!(fz > 0.0)) throw RootNotBracketed("zeta_hat (enter-or-quit)");
    const double hi = bracket_up(diag, zeta_lower, fz, "zeta_hat");
    zeta_hat = solve_on(c, diag, zeta_lower, hi, "zeta_hat");
}

double EnterOrQuitSystem::f1(double zeta, double alpha) const {
    const double r = ctx->r();
    return ctx->m() * ctx->M(0.0, alpha, -r * ctx->K1()) -
           r * ctx->K() * std::pow(zeta, -ctx->m());
}

double EnterOrQuitSystem::f2(double zeta, double alpha) const {
    const double r = ctx->r();
    return ctx->n() * ctx->N(alpha, kInf, -r * ctx->K1()) +
           r * ctx->K() * std::pow(zeta, -ctx->n());
}

double EnterOrQuitSystem::ell(double zeta) const {
    auto f = [this, zeta](double a) { return f1(zeta, a); };
    const double lo = std::max(zeta, alpha_bar);
    const double flo = f(lo);
    if (flo == 0.0) return lo;
    if (flo < 0.0) throw RootNotBracketed("ell (enter-or-quit)");
    const double hi = bracket_up(f, lo, flo, "ell (enter-or-quit)");
    return solve_on(*ctx, f, lo, hi, "ell (enter-or-quit)");
}

ZetaAlpha EnterOrQuitSystem::solve() const {
    const double r = ctx->r();
    const double L = r * (ctx->K() - ctx->K1());
    auto psi = [this, L](double z) {
        if (z >= zeta_hat) return ctx->n() * ctx->N(zeta_hat, kInf, L);
        return f2(z, ell(z));
    };
    const double fhi = psi(zeta_hat);
    if (!(fhi > 0.0)) throw RootNotBracketed("zeta (enter-or-quit)");
    const double lo = bracket_down(psi, zeta_hat, fhi, "zeta (enter-or-quit)");
    const double z = solve_on(*ctx, psi, lo, zeta_hat, "zeta (enter-or-quit)");
    return {z, ell(z)};
}

// ---------------------------------------------------------------------------

SwitchingPairSystem::SwitchingPairSystem(const Context& c) : ctx(&c) {
    const double r = c.r();
    if (!(c.h0 + r * c.K0() < 0.0))
        throw PreconditionViolated("switching pair needs h(0) < -rK0");
    beta_bar = c.cross(r * c.K0());
    alpha_bar = c.cross(-r * c.K1());
}

double SwitchingPairSystem::phi1(double beta, double alpha) const {
    const double r = ctx->r();
    return ctx->m() * ctx->M(beta, alpha, -r * ctx->K1()) +
           r * (ctx->K0() + ctx->K1()) * std::pow(beta, -ctx->m());
}

double SwitchingPairSystem::phi2(double beta, double alpha) const {
    const double r = ctx->r();
    return ctx->n() * ctx->N(beta, alpha, -r * ctx->K1()) +
           r * (ctx->K0() + ctx->K1()) * std::pow(beta, -ctx->n());
}

double SwitchingPairSystem::alpha_of(double beta) const {
    auto f = [this, beta](double a) { return phi1(beta, a); };
    const double lo = std::max(beta, alpha_bar);
    const double flo = f(lo);
    if (flo == 0.0) return lo;
    if (flo < 0.0) throw RootNotBracketed("alpha (switching pair)");
    const double hi = bracket_up(f, lo, flo, "alpha (switching pair)");
    return solve_on(*ctx, f, lo, hi, "alpha (switching pair)");
}

BetaAlpha SwitchingPairSystem::solve() const {
    auto psi = [this](double b) { return phi2(b, alpha_of(b)); };
    const double fhi = psi(beta_bar);
    if (!(fhi > 0.0)) throw RootNotBracketed("beta (switching pair)");
    const double lo = bracket_down(psi, beta_bar, fhi, "beta (switching pair)");
    const double b = solve_on(*ctx, psi, lo, beta_bar, "beta (switching pair)");
    return {b, alpha_of(b)};
}

// ---------------------------------------------------------------------------

DeltaAlpha solve_abandon_open(const Context& ctx) {
    const auto dd = delta_dagger(ctx);
    if (!dd) throw PreconditionViolated("abandon-open system needs h(0) + rK < 0");
    const double r = ctx.r();
    if (!(ctx.K() + ctx.K1() > 0.0))
        throw PreconditionViolated("abandon-open system needs K + K1 > 0");
    const double rK1 = r * ctx.K1();
    const double head = r * (ctx.K1() + ctx.K()) * std::pow(*dd, -ctx.m());
    auto f = [&ctx, dd, rK1, head](double a) {
        return ctx.m() * ctx.M(*dd, a, -rK1) + head;
    };
    const double lo = std::max(*dd, ctx.cross(-rK1));
    const double flo = f(lo);
    if (flo == 0.0) return {*dd, lo};
    if (flo < 0.0) throw RootNotBracketed("alpha (abandon-open)");
    const double hi = bracket_up(f, lo, flo, "alpha (abandon-open)");
    return {*dd, solve_on(ctx, f, lo, hi, "alpha (abandon-open)")};
}

double g1_peak(const Context& ctx, double lo, double alpha) {
    const double rK1 = ctx.r() * ctx.K1();
    const double m = ctx.m(), n = ctx.n();
    auto g1p = [&ctx, rK1, m, n, alpha](double x) {
        return m * std::pow(x, m - 1.0) * ctx.M(x, alpha, -rK1) -
               n * std::pow(x, n - 1.0) * ctx.N(x, alpha, -rK1);
    };
    if (!(g1p(lo) > 0.0)) throw RootNotBracketed("g1 peak (left end)");
    double hi = std::min(ctx.cross(-rK1), alpha);
    // The sign change sits strictly below the crossing of h - rK1; walk
    // toward alpha if rounding puts the crossing on the wrong side.
    int budget = 0;
    while (!(g1p(hi) < 0.0)) {
        hi = 0.5 * (hi + alpha);
        if (++budget > 60) throw RootNotBracketed("g1 peak (right end)");
    }
    return solve_on(ctx, g1p, lo, hi, "g1 peak");
}

// ---------------------------------------------------------------------------

PocketSystem::PocketSystem(const Context& c, double b) : ctx(&c), beta(b) {
    if (!(c.K() < c.K0()))
        throw PreconditionViolated("pocket system needs K < K0");
    tail = c.n() * c.N(beta, kInf, c.r() * c.K0());
}

double PocketSystem::F1(double delta, double gamma) const {
    const double r = ctx->r();
    return ctx->m() * ctx->M(delta, gamma, r * ctx->K0()) +
           r * (ctx->K() - ctx->K0()) * std::pow(delta, -ctx->m());
}

double PocketSystem::F2(double delta, double gamma) const {
    const double r = ctx->r();
    return ctx->n() * ctx->N(delta, gamma, r * ctx->K0()) +
           r * (ctx->K() - ctx->K0()) * std::pow(delta, -ctx->n()) + tail;
}

double PocketSystem::ell(double gamma) const {
    auto f = [this, gamma](double d) { return F1(d, gamma); };
    const double fhi = f(gamma);  // = r(K - K0) gamma^{-m} < 0
    const double lo = bracket_down(f, gamma, fhi, "ell (pocket)");
    return solve_on(*ctx, f, lo, gamma, "ell (pocket)");
}

DeltaGamma PocketSystem::solve() const {
    auto psi = [this](double g) { return F2(ell(g), g); };
    const double fhi = psi(beta);
    if (!(fhi > 0.0)) throw RootNotBracketed("gamma (pocket)");
    const double lo = bracket_down(psi, beta, fhi, "gamma (pocket)");
    const double g = solve_on(*ctx, psi, lo, beta, "gamma (pocket)");
    return {ell(g), g};
}

// ---------------------------------------------------------------------------

DualAbandonSystem::DualAbandonSystem(const Context& c) : ctx(&c) {
    if (!(c.K() < 0.0))
        throw PreconditionViolated("dual-abandon system needs K < 0");
    const auto d = delta_dagger(c);
    if (!d) throw PreconditionViolated("dual-abandon system needs h(0) + rK < 0");
    dd = *d;
    auto h1 = [this](double a) { return G2(a, a); };
    const double atilde = c.cross(c.r() * (c.K() - c.K1()));
    const double fhi = h1(atilde);
    if (!(fhi > 0.0)) throw RootNotBracketed("alpha_hat (dual-abandon)");
    alpha_hat = solve_on(c, h1, dd, atilde, "alpha_hat (dual-abandon)");
}

double DualAbandonSystem::G1(double zeta, double alpha) const {
    const double r = ctx->r();
    return ctx->m() * ctx->M(dd, alpha, -r * ctx->K1()) +
           r * (ctx->K1() + ctx->K()) * std::pow(dd, -ctx->m()) -
           r * ctx->K() * std::pow(zeta, -ctx->m());
}

double DualAbandonSystem::G2(double zeta, double alpha) const {
    const double r = ctx->r();
    return -ctx->n() * ctx->N(dd, alpha, -r * ctx->K1()) -
           r * (ctx->K1() + ctx->K()) * std::pow(dd, -ctx->n()) +
           r * ctx->K() * std::pow(zeta, -ctx->n());
}

double DualAbandonSystem::H1(double alpha) const { return G2(alpha, alpha); }

double DualAbandonSystem::ell(double alpha) const {
    // G2 = 0 reduces to n int_alpha^inf s^{-n-1}[h - rK1] ds + rK zeta^{-n} = 0.
    const double r = ctx->r();
    const double tail = ctx->n() * ctx->N(alpha, kInf, -r * ctx->K1());
    const double zn = -tail / (r * ctx->K());
    if (!(zn > 0.0)) throw RootNotBracketed("ell (dual-abandon)");
    return std::pow(zn, -1.0 / ctx->n());
}

DualAbandon DualAbandonSystem::solve() const {
    auto theta = [this](double a) {
        return G1(a <= alpha_hat ? alpha_hat : ell(a), a);
    };
    const double flo = theta(alpha_hat);
    if (flo == 0.0) return {dd, alpha_hat, alpha_hat};
    if (flo < 0.0) throw RootNotBracketed("alpha (dual-abandon)");
    const double hi = bracket_up(theta, alpha_hat, flo, "alpha (dual-abandon)");
    const double a = solve_on(*ctx, theta, alpha_hat, hi, "alpha (dual-abandon)");
    return {dd, ell(a), a};
}

// ---------------------------------------------------------------------------

FiveBoundarySystem::FiveBoundarySystem(const Context& c, double b, double a)
    : ctx(&c), beta(b), alpha(a) {
    const double r = c.r();
    if (!(c.K() < 0.0))
        throw PreconditionViolated("five-boundary system needs K < 0");
    const double zn = -c.n() * c.N(beta, kInf, r * c.K0()) / (r * c.K());
    if (!(zn > 0.0)) throw RootNotBracketed("zeta (five-boundary)");
    zeta = std::pow(zn, -1.0 / c.n());

    auto diag = [this](double g) { return G3(g, g); };
    const double fhi = diag(beta);
    if (!(fhi > 0.0)) throw RootNotBracketed("gamma_hat (five-boundary)");
    const double lo = bracket_down(diag, beta, fhi, "gamma_hat (five-boundary)");
    gamma_hat = solve_on(c, diag, lo, beta, "gamma_hat (five-boundary)");
}

double FiveBoundarySystem::G3(double delta, double gamma) const {
    const double r = ctx->r();
    return ctx->n() * ctx->N(delta, kInf, r * ctx->K()) -
           ctx->n() * ctx->N(gamma, beta, r * ctx->K0());
}

double FiveBoundarySystem::G5(double delta, double gamma) const {
    const double r = ctx->r();
    return ctx->m() * ctx->M(0.0, gamma, r * ctx->K0()) -
           ctx->m() * ctx->M(0.0, delta, r * ctx->K()) -
           r * ctx->K() * std::pow(zeta, -ctx->m());
}

double FiveBoundarySystem::ell(double gamma) const {
    auto f = [this, gamma](double d) { return G3(d, gamma); };
    const double fhi = f(gamma);
    if (fhi <= 0.0) {
        // Only reachable by rounding at gamma_hat, where the root collides
        // with gamma itself; genuinely negative values are a misuse.
        const double scale =
            ctx->n() * weighted_integral_parts(IntegralKind::N, ctx->roots,
                                               ctx->data.payoff, gamma, kInf,
                                               ctx->r() * ctx->K())
                           .abs_sum;
        if (fhi < -1e-9 * (1.0 + scale))
            throw RootNotBracketed("ell (five-boundary)");
        return gamma;
    }
    const double lo = bracket_down(f, gamma, fhi, "ell (five-boundary)");
    return solve_on(*ctx, f, lo, gamma, "ell (five-boundary)");
}

FivePoint FiveBoundarySystem::solve() const {
    // At gamma_hat the inner root collides with gamma, so the left endpoint
    // is evaluated on the diagonal without a root find.
    auto xi = [this](double g) {
        return G5(g <= gamma_hat ? g : ell(g), g);
    };
    const double fhi = xi(beta);
    if (!(fhi > 0.0)) throw RootNotBracketed("gamma (five-boundary)");
    const double flo = xi(gamma_hat);
    if (!(flo < 0.0)) throw RootNotBracketed("gamma (five-boundary, left end)");
    const double g = solve_on(*ctx, xi, gamma_hat, beta, "gamma (five-boundary)");
    return {zeta, ell(g), g, beta, alpha};
}

// ---------------------------------------------------------------------------

MergedCostSystem::MergedCostSystem(const Context& c) : ctx(&c) {
    const auto d = delta_dagger(c);
    if (!d) throw PreconditionViolated("merged-cost system needs h(0) + rK < 0");
    dd = *d;
}

double MergedCostSystem::alpha_of_k1(double k1) const {
    const double r = ctx->r();
    const double head = r * k1 * std::pow(dd, -ctx->m());
    auto f = [this, r, k1, head](double a) {
        return ctx->m() * ctx->M(dd, a, -r * k1) + head;
    };
    const double flo = f(dd);  // = r k1 dd^{-m} > 0
    const double hi = bracket_up(f, dd, flo, "alpha (merged-cost)");
    return solve_on(*ctx, f, dd, hi, "alpha (merged-cost)");
}

double MergedCostSystem::phi(double k1) const {
    const double r = ctx->r();
    const double a = alpha_of_k1(k1);
    return -ctx->n() * ctx->N(dd, a, -r * k1) -
           r * k1 * std::pow(dd, -ctx->n());
}

double MergedCostSystem::solve() const {
    auto f = [this](double k1) { return phi(k1); };
    double k = ctx->K1();
    double fk = f(k);
    if (fk == 0.0) return k;
    double lo, hi;
    if (fk > 0.0) {
        lo = k;
        hi = bracket_up(f, k, fk, "K1 level (merged-cost)");
    } else {
        hi = k;
        lo = bracket_down(f, k, fk, "K1 level (merged-cost)");
    }
    RootOptions opt;
    opt.name = "K1 level (merged-cost)";
    return find_root_bracketed(f, lo, hi, opt);
}

}  // namespace systems
}  // namespace switchopt
