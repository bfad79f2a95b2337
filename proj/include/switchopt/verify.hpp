#pragma once

#include <array>
#include <string>
#include <vector>

#include "switchopt/solution.hpp"

namespace switchopt {

struct GridSpec {
    double xmin = 0.1;
    double xmax = 10.0;
    int points = 1000;
    bool log_spaced = true;
};

// Grid spanning [min boundary / 10, max boundary * 10]; when the case has no
// free boundary the span is taken around the crossing of h - rK1.
GridSpec default_grid(const Solution& sol, int points = 1000);

std::vector<double> make_grid(const GridSpec& spec);

// Pointwise audit of the coupled variational inequalities. For mode 1 the
// clauses are {generator + h, switch-out gain, abandon gain} and for mode 0
// {generator, switch-in gain, abandon gain}; a solution has every clause
// <= tol and the max clause >= -tol, with tol = 1e-8 (1 + |w| + |h|).
struct HjbReport {
    std::vector<double> grid;
    // rows of clause values: [gen1, sw_out, ab1, gen0, sw_in, ab0]
    std::vector<std::array<double, 6>> clauses;
    // worst normalized violations (value / tol); pass needs max <= 1 and
    // pointwise max-of-clauses >= -tol.
    std::array<double, 6> max_clause{};             // raw per-clause maxima
    std::array<double, 6> max_clause_normalized{};  // clause / tol maxima
    double min_pointwise_max1 = 0.0;  // min over grid of max mode-1 clause / tol
    double min_pointwise_max0 = 0.0;
    bool pass = false;
};

HjbReport check_hjb(const Solution& sol, const GridSpec& spec);

// Value/slope gaps of the adjoining closed-form branches at every interior
// boundary point; pass needs gaps <= 1e-8 (1 + |w|).
struct C1Gap {
    int mode = 0;        // 1 or 0
    double boundary = 0.0;
    double value_gap = 0.0;
    double slope_gap = 0.0;
    double tol = 0.0;
};

struct C1Report {
    std::vector<C1Gap> gaps;
    bool pass = false;
};

C1Report check_c1(const Solution& sol);

}  // namespace switchopt
