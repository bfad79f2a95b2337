#include "switchopt/boundaries.hpp"

#include <cmath>

namespace switchopt {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(std::string("solver defect: ") + what);
}

CaseSolution solve_i1(const Context&) { return {}; }

CaseSolution solve_i2(const Context& ctx) {
    const double alpha = systems::solve_alpha_single(ctx);
    CaseSolution s;
    s.boundaries.alpha = alpha;
    const double B =
        ctx.N(alpha, kInf, -ctx.r() * ctx.K1()) / ctx.span();
    require(B > 0.0, "B <= 0 in case I.2");
    s.coefficients.B = B;
    return s;
}

CaseSolution solve_i3(const Context& ctx) {
    systems::EnterOrQuitSystem sys(ctx);
    const auto [zeta, alpha] = sys.solve();
    require(0.0 < zeta && zeta < alpha, "ordering in case I.3");
    CaseSolution s;
    s.boundaries.zeta = zeta;
    s.boundaries.alpha = alpha;
    const double rK = ctx.r() * ctx.K();
    const double d1 =
        rK * std::pow(zeta, -ctx.m()) / (ctx.s2() * ctx.m() * (ctx.n() - ctx.m()));
    const double d2 =
        -rK * std::pow(zeta, -ctx.n()) / (ctx.s2() * ctx.n() * (ctx.n() - ctx.m()));
    require(d1 > 0.0 && d2 > 0.0, "Delta coefficients in case I.3");
    s.coefficients.Delta1 = d1;
    s.coefficients.Delta2 = d2;
    return s;
}

CaseSolution solve_ii1(const Context& ctx) {
    systems::SwitchingPairSystem sys(ctx);
    const auto [beta, alpha] = sys.solve();
    require(0.0 < beta && beta < alpha, "ordering in case II.1");
    CaseSolution s;
    s.boundaries.beta = beta;
    s.boundaries.alpha = alpha;
    const double A = -ctx.M(0.0, beta, ctx.r() * ctx.K0()) / ctx.span();
    const double B = ctx.N(alpha, kInf, -ctx.r() * ctx.K1()) / ctx.span();
    require(A > 0.0 && B > 0.0, "A, B in case II.1");
    s.coefficients.A = A;
    s.coefficients.B = B;
    return s;
}

CaseSolution solve_ii2(const Context& ctx) {
    const auto [dd, alpha] = systems::solve_abandon_open(ctx);
    require(0.0 < dd && dd < alpha, "ordering in case II.2");
    CaseSolution s;
    s.boundaries.delta = dd;
    s.boundaries.alpha = alpha;
    const double A = -ctx.M(0.0, dd, ctx.r() * ctx.K()) / ctx.span();
    const double B = ctx.N(alpha, kInf, -ctx.r() * ctx.K1()) / ctx.span();
    require(A > 0.0 && B > 0.0, "A, B in case II.2");
    s.coefficients.A = A;
    s.coefficients.B = B;
    return s;
}

CaseSolution solve_ii3(const Context& ctx) {
    systems::SwitchingPairSystem outer(ctx);
    const auto [beta, alpha] = outer.solve();
    systems::PocketSystem pocket(ctx, beta);
    const auto [delta, gamma] = pocket.solve();
    require(0.0 < delta && delta < gamma && gamma < beta && beta < alpha,
            "ordering in case II.3");
    CaseSolution s;
    s.boundaries.delta = delta;
    s.boundaries.gamma = gamma;
    s.boundaries.beta = beta;
    s.boundaries.alpha = alpha;
    const double rK0 = ctx.r() * ctx.K0();
    const double A = -ctx.M(0.0, beta, rK0) / ctx.span();
    const double B = ctx.N(alpha, kInf, -ctx.r() * ctx.K1()) / ctx.span();
    const double g1 = -ctx.M(0.0, gamma, rK0) / ctx.span();
    const double g2 = -ctx.N(gamma, beta, rK0) / ctx.span();
    require(A > 0.0 && B > 0.0 && g1 > 0.0 && g2 > 0.0,
            "coefficients in case II.3");
    s.coefficients.A = A;
    s.coefficients.B = B;
    s.coefficients.Gamma1 = g1;
    s.coefficients.Gamma2 = g2;
    return s;
}

CaseSolution solve_iii1(const Context& ctx) {
    systems::DualAbandonSystem sys(ctx);
    const auto sol = sys.solve();
    require(0.0 < std::min(sol.delta_dagger, sol.zeta) &&
                std::max(sol.delta_dagger, sol.zeta) < sol.alpha,
            "ordering in case III.1");
    CaseSolution s;
    s.boundaries.delta = sol.delta_dagger;
    s.boundaries.zeta = sol.zeta;
    s.boundaries.alpha = sol.alpha;
    const double rK = ctx.r() * ctx.K();
    const double A = -ctx.M(0.0, sol.delta_dagger, rK) / ctx.span();
    const double d1 = rK * std::pow(sol.zeta, -ctx.m()) /
                      (ctx.s2() * ctx.m() * (ctx.n() - ctx.m()));
    const double d2 = -rK * std::pow(sol.zeta, -ctx.n()) /
                      (ctx.s2() * ctx.n() * (ctx.n() - ctx.m()));
    require(A > 0.0 && d1 > 0.0 && d2 > 0.0, "coefficients in case III.1");
    CaseSolution& out = s;
    out.coefficients.A = A;
    out.coefficients.Delta1 = d1;
    out.coefficients.Delta2 = d2;
    return out;
}

CaseSolution solve_iii2(const Context& ctx) {
    systems::SwitchingPairSystem outer(ctx);
    const auto [beta, alpha] = outer.solve();
    systems::FiveBoundarySystem sys(ctx, beta, alpha);
    const auto sol = sys.solve();
    require(0.0 < sol.zeta && sol.zeta < sol.delta && sol.delta < sol.gamma &&
                sol.gamma < sol.beta && sol.beta < sol.alpha,
            "ordering in case III.2");
    CaseSolution s;
    s.boundaries.zeta = sol.zeta;
    s.boundaries.delta = sol.delta;
    s.boundaries.gamma = sol.gamma;
    s.boundaries.beta = sol.beta;
    s.boundaries.alpha = sol.alpha;
    const double rK = ctx.r() * ctx.K();
    const double g1 = -ctx.M(0.0, sol.delta, rK) / ctx.span();
    const double g2 = -ctx.N(sol.delta, kInf, rK) / ctx.span();
    const double d1 = rK * std::pow(sol.zeta, -ctx.m()) /
                      (ctx.s2() * ctx.m() * (ctx.n() - ctx.m()));
    const double d2 = -rK * std::pow(sol.zeta, -ctx.n()) /
                      (ctx.s2() * ctx.n() * (ctx.n() - ctx.m()));
    const double A =
        d1 - ctx.M(0.0, sol.alpha, -ctx.r() * ctx.K1()) / ctx.span();
    require(g1 > 0.0 && g2 > 0.0 && d1 > 0.0 && d2 > 0.0 && A > 0.0,
            "coefficients in case III.2");
    s.coefficients.Gamma1 = g1;
    s.coefficients.Gamma2 = g2;
    s.coefficients.Delta1 = d1;
    s.coefficients.Delta2 = d2;
    s.coefficients.A = A;
    return s;
}

}  // namespace

CaseSolution solve_case(const Context& ctx, CaseId id) {
    switch (id) {
        case CaseId::I1: return solve_i1(ctx);
        case CaseId::I2: return solve_i2(ctx);
        case CaseId::I3: return solve_i3(ctx);
        case CaseId::II1: return solve_ii1(ctx);
        case CaseId::II2: return solve_ii2(ctx);
        case CaseId::II3: return solve_ii3(ctx);
        case CaseId::III1: return solve_iii1(ctx);
        case CaseId::III2: return solve_iii2(ctx);
    }
    throw Error("unknown case");
}

CaseSolution solve_case_checked(const ProblemData& data, CaseId expected) {
    const Context ctx = Context::make(data);
    const Classification cl = classify(ctx);
    if (cl.id != expected)
        throw PreconditionViolated(std::string("instance classifies as ") +
                                   to_string(cl.id) + ", not " +
                                   to_string(expected));
    return solve_case(ctx, expected);
}

bool ordering_holds(CaseId id, const FreeBoundaries& b) {
    auto pos = [](const std::optional<double>& v) { return v && *v > 0.0; };
    switch (id) {
        case CaseId::I1:
            return true;
        case CaseId::I2:
            return pos(b.alpha);
        case CaseId::I3:
            return pos(b.zeta) && pos(b.alpha) && *b.zeta < *b.alpha;
        case CaseId::II1:
            return pos(b.beta) && pos(b.alpha) && *b.beta < *b.alpha;
        case CaseId::II2:
            return pos(b.delta) && pos(b.alpha) && *b.delta < *b.alpha;
        case CaseId::II3:
            return pos(b.delta) && pos(b.gamma) && pos(b.beta) &&
                   pos(b.alpha) && *b.delta < *b.gamma && *b.gamma < *b.beta &&
                   *b.beta < *b.alpha;
        case CaseId::III1:
            return pos(b.delta) && pos(b.zeta) && pos(b.alpha) &&
                   std::max(*b.delta, *b.zeta) < *b.alpha;
        case CaseId::III2:
            return pos(b.zeta) && pos(b.delta) && pos(b.gamma) &&
                   pos(b.beta) && pos(b.alpha) && *b.zeta < *b.delta &&
                   *b.delta < *b.gamma && *b.gamma < *b.beta &&
                   *b.beta < *b.alpha;
    }
    return false;
}

namespace {

struct ResidualBuilder {
    Residual out;
    explicit ResidualBuilder(std::string name) { out.equation = std::move(name); }
    // closed-form additive term
    void term(double v) {
        out.value += v;
        out.scale = std::max(out.scale, std::fabs(v));
    }
    // integral term: scale from the per-payoff-term contributions
    void integral(double factor, const IntegralParts& parts) {
        out.value += factor * parts.value;
        out.scale = std::max(out.scale, std::fabs(factor) * parts.abs_sum);
    }
};

}  // namespace

std::vector<Residual> case_residuals(const Context& ctx, CaseId id,
                                     const FreeBoundaries& b) {
    const double r = ctx.r();
    const double m = ctx.m(), n = ctx.n();
    const double K = ctx.K(), K0 = ctx.K0(), K1 = ctx.K1();
    const auto& h = ctx.data.payoff;
    auto M = [&](double lo, double hi, double L) {
        return weighted_integral_parts(IntegralKind::M, ctx.roots, h, lo, hi, L);
    };
    auto N = [&](double lo, double hi, double L) {
        return weighted_integral_parts(IntegralKind::N, ctx.roots, h, lo, hi, L);
    };

    std::vector<Residual> res;
    switch (id) {
        case CaseId::I1:
            break;
        case CaseId::I2: {
            ResidualBuilder e("switch-in boundary");
            e.integral(1.0, M(0.0, *b.alpha, -r * K1));
            res.push_back(e.out);
            break;
        }
        case CaseId::I3: {
            ResidualBuilder f1("f1");
            f1.integral(m, M(0.0, *b.alpha, -r * K1));
            f1.term(-r * K * std::pow(*b.zeta, -m));
            res.push_back(f1.out);
            ResidualBuilder f2("f2");
            f2.integral(n, N(*b.alpha, kInf, -r * K1));
            f2.term(r * K * std::pow(*b.zeta, -n));
            res.push_back(f2.out);
            break;
        }
        case CaseId::II1: {
            ResidualBuilder e1("pair equation m");
            e1.integral(m, M(*b.beta, *b.alpha, 0.0));
            e1.term(r * K0 * std::pow(*b.beta, -m));
            e1.term(r * K1 * std::pow(*b.alpha, -m));
            res.push_back(e1.out);
            ResidualBuilder e2("pair equation n");
            e2.integral(n, N(*b.beta, *b.alpha, 0.0));
            e2.term(r * K0 * std::pow(*b.beta, -n));
            e2.term(r * K1 * std::pow(*b.alpha, -n));
            res.push_back(e2.out);
            break;
        }
        case CaseId::II2: {
            ResidualBuilder d("abandon boundary");
            d.integral(1.0, N(*b.delta, kInf, r * K));
            res.push_back(d.out);
            ResidualBuilder f("switch-in boundary");
            f.integral(m, M(*b.delta, *b.alpha, -r * K1));
            f.term(r * (K1 + K) * std::pow(*b.delta, -m));
            res.push_back(f.out);
            break;
        }
        case CaseId::II3: {
            auto outer = case_residuals(ctx, CaseId::II1, b);
            res.insert(res.end(), outer.begin(), outer.end());
            ResidualBuilder F1("F1");
            F1.integral(m, M(*b.delta, *b.gamma, r * K0));
            F1.term(r * (K - K0) * std::pow(*b.delta, -m));
            res.push_back(F1.out);
            ResidualBuilder F2("F2");
            F2.integral(n, N(*b.delta, *b.gamma, r * K0));
            F2.term(r * (K - K0) * std::pow(*b.delta, -n));
            F2.integral(n, N(*b.beta, kInf, r * K0));
            res.push_back(F2.out);
            break;
        }
        case CaseId::III1: {
            ResidualBuilder d("abandon boundary");
            d.integral(1.0, N(*b.delta, kInf, r * K));
            res.push_back(d.out);
            ResidualBuilder G1("G1");
            G1.integral(m, M(*b.delta, *b.alpha, -r * K1));
            G1.term(r * (K1 + K) * std::pow(*b.delta, -m));
            G1.term(-r * K * std::pow(*b.zeta, -m));
            res.push_back(G1.out);
            ResidualBuilder G2("G2");
            G2.integral(-n, N(*b.delta, *b.alpha, -r * K1));
            G2.term(-r * (K1 + K) * std::pow(*b.delta, -n));
            G2.term(r * K * std::pow(*b.zeta, -n));
            res.push_back(G2.out);
            break;
        }
        case CaseId::III2: {
            auto outer = case_residuals(ctx, CaseId::II1, b);
            res.insert(res.end(), outer.begin(), outer.end());
            ResidualBuilder G3("G3");
            G3.integral(n, N(*b.delta, kInf, r * K));
            G3.integral(-n, N(*b.gamma, *b.beta, r * K0));
            res.push_back(G3.out);
            ResidualBuilder G4("G4");
            G4.integral(n, N(*b.beta, kInf, r * K0));
            G4.term(r * K * std::pow(*b.zeta, -n));
            res.push_back(G4.out);
            ResidualBuilder G5("G5");
            G5.integral(m, M(0.0, *b.gamma, r * K0));
            G5.integral(-m, M(0.0, *b.delta, r * K));
            G5.term(-r * K * std::pow(*b.zeta, -m));
            res.push_back(G5.out);
            break;
        }
    }
    return res;
}

}  // namespace switchopt
