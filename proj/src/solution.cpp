#include "switchopt/solution.hpp"

#include <algorithm>
#include <cmath>

namespace switchopt {

namespace {

Piece constant_piece(double lo, double hi, double value) {
    Piece p;
    p.lo = lo;
    p.hi = hi;
    p.offset = value;
    return p;
}

Piece power_piece(double lo, double hi, double cm, double cn,
                  double offset = 0.0) {
    Piece p;
    p.lo = lo;
    p.hi = hi;
    p.coef_m = cm;
    p.coef_n = cn;
    p.offset = offset;
    return p;
}

Piece resolvent_piece(double lo, double hi, double cm = 0.0, double cn = 0.0,
                      double offset = 0.0) {
    Piece p = power_piece(lo, hi, cm, cn, offset);
    p.with_resolvent = true;
    return p;
}

Interval closed_left(double lo, double hi) { return {lo, hi, true, false}; }
Interval closed_right(double lo, double hi) { return {lo, hi, false, true}; }
Interval closed_both(double lo, double hi) { return {lo, hi, true, true}; }
Interval open_both(double lo, double hi) { return {lo, hi, false, false}; }

void assemble(Solution& s) {
    const double K = s.ctx.K();
    const double K0 = s.ctx.K0();
    const double K1 = s.ctx.K1();
    const auto& b = s.boundaries;
    const auto& c = s.coefficients;

    switch (s.case_id) {
        case CaseId::I1: {
            s.w1 = {resolvent_piece(0.0, kInf)};
            s.w0 = {resolvent_piece(0.0, kInf, 0.0, 0.0, -K1)};
            s.regions.P = {open_both(0.0, kInf)};
            s.regions.S_in = {open_both(0.0, kInf)};
            break;
        }
        case CaseId::I2: {
            const double a = *b.alpha;
            s.w1 = {resolvent_piece(0.0, kInf)};
            s.w0 = {power_piece(0.0, a, 0.0, *c.B),
                    resolvent_piece(a, kInf, 0.0, 0.0, -K1)};
            s.regions.P = {open_both(0.0, kInf)};
            s.regions.W = {open_both(0.0, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::I3: {
            const double z = *b.zeta, a = *b.alpha;
            s.w1 = {resolvent_piece(0.0, kInf)};
            s.w0 = {constant_piece(0.0, z, -K),
                    power_piece(z, a, *c.Delta1, *c.Delta2),
                    resolvent_piece(a, kInf, 0.0, 0.0, -K1)};
            s.regions.P = {open_both(0.0, kInf)};
            s.regions.A0 = {closed_right(0.0, z)};
            s.regions.W = {open_both(z, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::II1: {
            const double be = *b.beta, a = *b.alpha;
            s.w1 = {power_piece(0.0, be, 0.0, *c.B, -K0),
                    resolvent_piece(be, kInf, *c.A, 0.0)};
            s.w0 = {power_piece(0.0, a, 0.0, *c.B),
                    resolvent_piece(a, kInf, *c.A, 0.0, -K1)};
            s.regions.S_out = {closed_right(0.0, be)};
            s.regions.P = {open_both(be, kInf)};
            s.regions.W = {open_both(0.0, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::II2: {
            const double dd = *b.delta, a = *b.alpha;
            s.w1 = {constant_piece(0.0, dd, -K),
                    resolvent_piece(dd, kInf, *c.A, 0.0)};
            s.w0 = {power_piece(0.0, a, 0.0, *c.B),
                    resolvent_piece(a, kInf, *c.A, 0.0, -K1)};
            s.regions.A1 = {closed_right(0.0, dd)};
            s.regions.P = {open_both(dd, kInf)};
            s.regions.W = {open_both(0.0, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::II3: {
            const double d = *b.delta, g = *b.gamma, be = *b.beta,
                         a = *b.alpha;
            s.w1 = {constant_piece(0.0, d, -K),
                    resolvent_piece(d, g, *c.Gamma1, *c.Gamma2),
                    power_piece(g, be, 0.0, *c.B, -K0),
                    resolvent_piece(be, kInf, *c.A, 0.0)};
            s.w0 = {power_piece(0.0, a, 0.0, *c.B),
                    resolvent_piece(a, kInf, *c.A, 0.0, -K1)};
            s.regions.A1 = {closed_right(0.0, d)};
            s.regions.P = {open_both(d, g), open_both(be, kInf)};
            s.regions.S_out = {closed_both(g, be)};
            s.regions.W = {open_both(0.0, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::III1: {
            const double dd = *b.delta, z = *b.zeta, a = *b.alpha;
            s.w1 = {constant_piece(0.0, dd, -K),
                    resolvent_piece(dd, kInf, *c.A, 0.0)};
            s.w0 = {constant_piece(0.0, z, -K),
                    power_piece(z, a, *c.Delta1, *c.Delta2),
                    resolvent_piece(a, kInf, *c.A, 0.0, -K1)};
            s.regions.A1 = {closed_right(0.0, dd)};
            s.regions.P = {open_both(dd, kInf)};
            s.regions.A0 = {closed_right(0.0, z)};
            s.regions.W = {open_both(z, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
        case CaseId::III2: {
            const double z = *b.zeta, d = *b.delta, g = *b.gamma,
                         be = *b.beta, a = *b.alpha;
            s.w1 = {constant_piece(0.0, d, -K),
                    resolvent_piece(d, g, *c.Gamma1, *c.Gamma2),
                    power_piece(g, be, *c.Delta1, *c.Delta2, -K0),
                    resolvent_piece(be, kInf, *c.A, 0.0)};
            s.w0 = {constant_piece(0.0, z, -K),
                    power_piece(z, a, *c.Delta1, *c.Delta2),
                    resolvent_piece(a, kInf, *c.A, 0.0, -K1)};
            s.regions.A1 = {closed_right(0.0, d)};
            s.regions.P = {open_both(d, g), open_both(be, kInf)};
            s.regions.S_out = {closed_both(g, be)};
            s.regions.A0 = {closed_right(0.0, z)};
            s.regions.W = {open_both(z, a)};
            s.regions.S_in = {closed_left(a, kInf)};
            break;
        }
    }
}

}  // namespace

std::vector<double> Solution::boundary_points() const {
    std::vector<double> pts;
    for (const auto* list : {&w1, &w0})
        for (const auto& p : *list) {
            if (p.lo > 0.0) pts.push_back(p.lo);
            if (p.hi < kInf) pts.push_back(p.hi);
        }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Solution build_solution(const ProblemData& data) {
    Solution s;
    s.ctx = Context::make(data);
    const Classification cl = classify(s.ctx);
    s.case_id = cl.id;
    s.thresholds = cl.thresholds;
    CaseSolution cs = solve_case(s.ctx, cl.id);
    s.boundaries = cs.boundaries;
    s.coefficients = cs.coefficients;
    assemble(s);
    return s;
}

double eval_piece(const Solution& sol, const Piece& piece, double x,
                  int order) {
    const double m = sol.ctx.m();
    const double n = sol.ctx.n();
    double v = 0.0;
    auto dpow = [order, x](double coef, double e) {
        if (coef == 0.0) return 0.0;
        double c = coef, ee = e;
        for (int i = 0; i < order; ++i) {
            c *= ee;
            ee -= 1.0;
        }
        return c * std::pow(x, ee);
    };
    v += dpow(piece.coef_m, m);
    v += dpow(piece.coef_n, n);
    if (order == 0) v += piece.offset;
    if (piece.with_resolvent) {
        switch (order) {
            case 0: v += sol.ctx.Rh(x); break;
            case 1: v += sol.ctx.Rh1(x); break;
            default: v += sol.ctx.Rh2(x); break;
        }
    }
    return v;
}

double eval(const Solution& sol, int z, double x, int order) {
    if (!(x > 0.0)) throw Error("eval requires x > 0");
    const auto& pieces = (z == 1) ? sol.w1 : sol.w0;
    if (order >= 2) {
        for (double p : sol.boundary_points())
            if (x == p)
                throw UndefinedSecondDerivative(
                    "second derivative jumps at a free boundary");
        for (double a : sol.ctx.step_locs)
            if (x == a)
                throw UndefinedSecondDerivative(
                    "second derivative jumps at a payoff step");
    }
    for (const auto& p : pieces)
        if (x >= p.lo && (x < p.hi || p.hi == kInf)) return eval_piece(sol, p, x, order);
    return eval_piece(sol, pieces.back(), x, order);
}

Action region_action(const RegionMap& regions, int z, double x) {
    if (z == 1) {
        if (regions.in(regions.A1, x)) return Action::Abandon;
        if (regions.in(regions.S_out, x)) return Action::Switch;
        return Action::Continue;
    }
    if (regions.in(regions.A0, x)) return Action::Abandon;
    if (regions.in(regions.S_in, x)) return Action::Switch;
    return Action::Continue;
}

Action optimal_action(const Solution& sol, int z, double x) {
    return region_action(sol.regions, z, x);
}

}  // namespace switchopt
