#include "switchopt/classify.hpp"

#include <cmath>

namespace switchopt {

const char* to_string(CaseId id) {
    switch (id) {
        case CaseId::I1: return "I1";
        case CaseId::I2: return "I2";
        case CaseId::I3: return "I3";
        case CaseId::II1: return "II1";
        case CaseId::II2: return "II2";
        case CaseId::II3: return "II3";
        case CaseId::III1: return "III1";
        case CaseId::III2: return "III2";
    }
    return "?";
}

std::optional<CaseId> case_from_string(const std::string& s) {
    if (s == "I1") return CaseId::I1;
    if (s == "I2") return CaseId::I2;
    if (s == "I3") return CaseId::I3;
    if (s == "II1") return CaseId::II1;
    if (s == "II2") return CaseId::II2;
    if (s == "II3") return CaseId::II3;
    if (s == "III1") return CaseId::III1;
    if (s == "III2") return CaseId::III2;
    return std::nullopt;
}

std::optional<double> solve_delta_dagger(const Context& ctx) {
    return systems::delta_dagger(ctx);
}

std::optional<double> solve_delta_dagger(const ProblemData& data) {
    return solve_delta_dagger(Context::make(data));
}

K0StarResult compute_K0_star(const Context& ctx) {
    const double r = ctx.r();
    if (!(ctx.K() >= 0.0))
        throw PreconditionViolated("K0_star is defined on the K >= 0 branch");
    if (!(ctx.h0 + r * ctx.K() < 0.0))
        throw PreconditionViolated("K0_star needs h(0) + rK < 0");

    const auto [dd, alpha] = systems::solve_abandon_open(ctx);
    const double x_hat = systems::g1_peak(ctx, dd, alpha);

    K0StarResult out;
    out.delta_dagger = dd;
    out.alpha = alpha;
    out.x_hat = x_hat;
    out.K0_star = -ctx.K1() -
                  ctx.m() * std::pow(x_hat, ctx.m()) / r *
                      ctx.M(x_hat, alpha, -r * ctx.K1());
    if (!(ctx.K() < out.K0_star && out.K0_star < -ctx.h0 / r))
        throw Error("K0_star outside (K, -h(0)/r): solver defect");
    return out;
}

double compute_K1_dagger(const Context& ctx) {
    const double r = ctx.r();
    if (!(ctx.K() < 0.0))
        throw PreconditionViolated("K1_dagger is defined on the K < 0 branch");
    if (!(ctx.h0 + r * ctx.K() < 0.0))
        throw PreconditionViolated("K1_dagger needs h(0) + rK < 0");
    systems::MergedCostSystem sys(ctx);
    if (!(ctx.h(sys.dd) < 0.0))
        throw PreconditionViolated("K1_dagger needs h(delta_dagger) < 0");
    return sys.solve();
}

K0DaggerResult compute_K0_dagger(const Context& ctx) {
    const double r = ctx.r();
    if (!(ctx.K() < 0.0))
        throw PreconditionViolated("K0_dagger is defined on the K < 0 branch");
    if (!(ctx.h0 + r * ctx.K() < 0.0))
        throw PreconditionViolated("K0_dagger needs h(0) + rK < 0");
    const double k1d = compute_K1_dagger(ctx);
    if (!(ctx.K1() < k1d))
        throw PreconditionViolated("K0_dagger needs K1 < K1_dagger");

    // The dual-abandonment boundaries do not depend on K0.
    systems::DualAbandonSystem sys(ctx);
    const auto sol = sys.solve();
    const double x_hat = systems::g1_peak(ctx, sol.delta_dagger, sol.alpha);

    K0DaggerResult out;
    out.delta_dagger = sol.delta_dagger;
    out.zeta = sol.zeta;
    out.alpha = sol.alpha;
    out.x_hat = x_hat;
    out.K0_dagger = -ctx.K1() -
                    ctx.n() * std::pow(x_hat, ctx.n()) / r *
                        ctx.N(x_hat, sol.alpha, -r * ctx.K1());
    if (!(out.K0_dagger > 0.0))
        throw Error("K0_dagger not positive: solver defect");
    return out;
}

Classification classify(const Context& ctx) {
    const double r = ctx.r();
    const double h0 = ctx.h0;
    const double K = ctx.K();
    const double K0 = ctx.K0();
    const double K1 = ctx.K1();

    Classification out;
    if (K >= 0.0) {
        if (h0 >= r * K1) {
            out.id = CaseId::I1;
            return out;
        }
        if (h0 >= std::max(-r * K0, -r * K)) {
            out.id = CaseId::I2;
            return out;
        }
        if (K0 <= K) {
            out.id = CaseId::II1;
            return out;
        }
        // K < K0 and h(0) < -rK here, so delta_dagger exists.
        if (h0 >= -r * K0) {
            out.id = CaseId::II2;
            return out;
        }
        const auto star = compute_K0_star(ctx);
        out.thresholds.delta_dagger = star.delta_dagger;
        out.thresholds.x_hat = star.x_hat;
        out.thresholds.K0_star = star.K0_star;
        out.id = (K0 >= star.K0_star) ? CaseId::II2 : CaseId::II3;
        return out;
    }

    // K < 0
    if (h0 >= r * K1 - r * K) {
        out.id = CaseId::I1;
        return out;
    }
    if (h0 >= -r * K) {
        out.id = CaseId::I3;
        return out;
    }
    if (h0 >= -r * K0) {
        out.id = CaseId::III1;
        return out;
    }
    const double dd = *systems::delta_dagger(ctx);
    out.thresholds.delta_dagger = dd;
    if (ctx.h(dd) >= 0.0) {
        out.id = CaseId::III1;
        return out;
    }
    const double k1d = compute_K1_dagger(ctx);
    out.thresholds.K1_dagger = k1d;
    if (K1 >= k1d) {
        out.id = CaseId::III1;
        return out;
    }
    const auto dag = compute_K0_dagger(ctx);
    out.thresholds.x_hat = dag.x_hat;
    out.thresholds.K0_dagger = dag.K0_dagger;
    out.id = (K0 >= dag.K0_dagger) ? CaseId::III1 : CaseId::III2;
    return out;
}

Classification classify(const ProblemData& data) {
    return classify(Context::make(data));
}

}  // namespace switchopt
