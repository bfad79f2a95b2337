#include "switchopt/verify.hpp"

#include <algorithm>
#include <cmath>

namespace switchopt {

GridSpec default_grid(const Solution& sol, int points) {
    GridSpec g;
    g.points = points;
    const auto pts = sol.boundary_points();
    if (!pts.empty()) {
        g.xmin = pts.front() / 10.0;
        g.xmax = pts.back() * 10.0;
    } else {
        const double ref =
            std::max(1.0, sol.ctx.cross(-sol.ctx.r() * sol.ctx.K1()));
        g.xmin = ref / 10.0;
        g.xmax = ref * 10.0;
    }
    return g;
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (!(spec.xmin > 0.0) || !(spec.xmax > spec.xmin) || spec.points < 2)
        throw InvalidConfig("grid needs 0 < xmin < xmax and points >= 2");
    std::vector<double> xs(spec.points);
    if (spec.log_spaced) {
        const double l0 = std::log(spec.xmin);
        const double l1 = std::log(spec.xmax);
        for (int i = 0; i < spec.points; ++i)
            xs[i] = std::exp(l0 + (l1 - l0) * i / (spec.points - 1));
    } else {
        for (int i = 0; i < spec.points; ++i)
            xs[i] = spec.xmin + (spec.xmax - spec.xmin) * i / (spec.points - 1);
    }
    return xs;
}

HjbReport check_hjb(const Solution& sol, const GridSpec& spec) {
    const double s2 = sol.ctx.s2();
    const double bdrift = sol.ctx.data.market.b;
    const double r = sol.ctx.r();
    const double K = sol.ctx.K();
    const double K0 = sol.ctx.K0();
    const double K1 = sol.ctx.K1();

    std::vector<double> special = sol.boundary_points();
    for (double a : sol.ctx.step_locs) special.push_back(a);
    std::sort(special.begin(), special.end());

    HjbReport rep;
    rep.grid = make_grid(spec);
    rep.clauses.reserve(rep.grid.size());
    rep.max_clause.fill(-kInf);
    rep.max_clause_normalized.fill(-kInf);
    rep.min_pointwise_max1 = kInf;
    rep.min_pointwise_max0 = kInf;

    for (double& x : rep.grid) {
        // keep grid points off the boundary/step set where w'' jumps
        for (double p : special)
            if (std::fabs(x - p) < 1e-9 * p) x = p * (x < p ? 1.0 - 1e-9 : 1.0 + 1e-9);

        const double hx = sol.ctx.h(x);
        const double w1v = eval(sol, 1, x, 0);
        const double w1d = eval(sol, 1, x, 1);
        const double w1dd = eval(sol, 1, x, 2);
        const double w0v = eval(sol, 0, x, 0);
        const double w0d = eval(sol, 0, x, 1);
        const double w0dd = eval(sol, 0, x, 2);

        std::array<double, 6> c;
        c[0] = s2 * x * x * w1dd + bdrift * x * w1d - r * w1v + hx;
        c[1] = w0v - w1v - K0;
        c[2] = -w1v - K;
        c[3] = s2 * x * x * w0dd + bdrift * x * w0d - r * w0v;
        c[4] = w1v - w0v - K1;
        c[5] = -w0v - K;
        rep.clauses.push_back(c);

        const double tol =
            1e-8 * (1.0 + std::max(std::fabs(w1v), std::fabs(w0v)) +
                    std::fabs(hx));
        for (int i = 0; i < 6; ++i) {
            rep.max_clause[i] = std::max(rep.max_clause[i], c[i]);
            rep.max_clause_normalized[i] =
                std::max(rep.max_clause_normalized[i], c[i] / tol);
        }
        rep.min_pointwise_max1 = std::min(
            rep.min_pointwise_max1, std::max({c[0], c[1], c[2]}) / tol);
        rep.min_pointwise_max0 = std::min(
            rep.min_pointwise_max0, std::max({c[3], c[4], c[5]}) / tol);
    }

    const double worst_clause = *std::max_element(
        rep.max_clause_normalized.begin(), rep.max_clause_normalized.end());
    rep.pass = worst_clause <= 1.0 && rep.min_pointwise_max1 >= -1.0 &&
               rep.min_pointwise_max0 >= -1.0;
    return rep;
}

namespace {

void audit_mode(const Solution& sol, const std::vector<Piece>& pieces,
                int mode, C1Report& rep) {
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double p = pieces[i].hi;
        C1Gap gap;
        gap.mode = mode;
        gap.boundary = p;
        const double left = eval_piece(sol, pieces[i], p, 0);
        const double right = eval_piece(sol, pieces[i + 1], p, 0);
        gap.value_gap = std::fabs(left - right);
        gap.slope_gap = std::fabs(eval_piece(sol, pieces[i], p, 1) -
                                  eval_piece(sol, pieces[i + 1], p, 1));
        gap.tol = 1e-8 * (1.0 + std::max(std::fabs(left), std::fabs(right)));
        rep.gaps.push_back(gap);
    }
}

}  // namespace

C1Report check_c1(const Solution& sol) {
    C1Report rep;
    audit_mode(sol, sol.w1, 1, rep);
    audit_mode(sol, sol.w0, 0, rep);
    rep.pass = true;
    for (const auto& g : rep.gaps)
        if (g.value_gap > g.tol || g.slope_gap > g.tol) rep.pass = false;
    return rep;
}

}  // namespace switchopt
