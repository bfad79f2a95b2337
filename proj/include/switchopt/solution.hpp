#pragma once

#include <vector>

#include "switchopt/boundaries.hpp"

namespace switchopt {

enum class PieceForm { Constant, PowerPair, ResolventPlus };

// One closed-form branch of a value function on [lo, hi):
//   coef_m x^m + coef_n x^n + offset (+ R_h(x) when with_resolvent).
struct Piece {
    double lo = 0.0;
    double hi = kInf;
    double coef_m = 0.0;
    double coef_n = 0.0;
    double offset = 0.0;
    bool with_resolvent = false;

    PieceForm form() const {
        if (with_resolvent) return PieceForm::ResolventPlus;
        if (coef_m == 0.0 && coef_n == 0.0) return PieceForm::Constant;
        return PieceForm::PowerPair;
    }
};

struct Interval {
    double lo = 0.0;
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(double x) const {
        if (lo_closed ? x < lo : x <= lo) return false;
        if (hi_closed ? x > hi : x >= hi) return false;
        return true;
    }
};

// The five-region partition of each mode's state space.
struct RegionMap {
    std::vector<Interval> P;      // keep producing (mode 1)
    std::vector<Interval> W;      // keep waiting (mode 0)
    std::vector<Interval> S_out;  // switch open -> closed
    std::vector<Interval> S_in;   // switch closed -> open
    std::vector<Interval> A0;     // abandon from closed
    std::vector<Interval> A1;     // abandon from open

    bool in(const std::vector<Interval>& set, double x) const {
        for (const auto& iv : set)
            if (iv.contains(x)) return true;
        return false;
    }
};

enum class Action { Continue, Switch, Abandon };

struct Solution {
    Context ctx;
    CaseId case_id = CaseId::I1;
    Thresholds thresholds;
    FreeBoundaries boundaries;
    Coefficients coefficients;
    std::vector<Piece> w1;
    std::vector<Piece> w0;
    RegionMap regions;

    // Interior endpoints of the w1/w0 piecewise decomposition, sorted.
    std::vector<double> boundary_points() const;
};

// classify + solve + assemble the piecewise value functions and region map.
Solution build_solution(const ProblemData& data);

// Closed-form evaluation of w_z and its derivatives (order 0, 1, 2). Order 2
// throws UndefinedSecondDerivative exactly at free-boundary or payoff-step
// points, where w'' jumps.
double eval(const Solution& sol, int z, double x, int order = 0);

// Evaluation of one specific piece extended analytically to any x > 0 (used
// by the smooth-pasting audit to compare adjoining branches at a boundary).
double eval_piece(const Solution& sol, const Piece& piece, double x,
                  int order = 0);

Action optimal_action(const Solution& sol, int z, double x);
Action region_action(const RegionMap& regions, int z, double x);

}  // namespace switchopt
