#pragma once

#include <optional>
#include <string>

#include "switchopt/systems.hpp"

namespace switchopt {

// The eight qualitative regimes of the optimal strategy.
enum class CaseId { I1, I2, I3, II1, II2, II3, III1, III2 };

const char* to_string(CaseId id);
std::optional<CaseId> case_from_string(const std::string& s);

// Subsidiary quantities computed while classifying; each is present exactly
// when the decision path needed it.
struct Thresholds {
    std::optional<double> delta_dagger;
    std::optional<double> x_hat;
    std::optional<double> K0_star;
    std::optional<double> K1_dagger;
    std::optional<double> K0_dagger;
};

struct Classification {
    CaseId id = CaseId::I1;
    Thresholds thresholds;
};

// Abandonment threshold of the open mode, independent of K0 and K1: the
// unique root of int_dd^inf s^{-n-1}[h + rK] ds = 0 when h(0) + rK < 0,
// absent otherwise.
std::optional<double> solve_delta_dagger(const ProblemData& data);
std::optional<double> solve_delta_dagger(const Context& ctx);

// Critical close-switch cost separating the II.2 and II.3 regimes
// (K >= 0 branch). Independent of K0; K < K0_star < -h(0)/r.
struct K0StarResult {
    double K0_star = 0.0;
    double x_hat = 0.0;
    double alpha = 0.0;
    double delta_dagger = 0.0;
};
K0StarResult compute_K0_star(const Context& ctx);

// Critical open-switch cost at which the two abandonment boundaries of the
// dual-abandonment regime merge (zeta = delta_dagger). Requires K < 0,
// h(0) + rK < 0 and h(delta_dagger) < 0.
double compute_K1_dagger(const Context& ctx);

// Critical close-switch cost separating the III.1 and III.2 regimes, defined
// for K1 < K1_dagger. Independent of K0.
struct K0DaggerResult {
    double K0_dagger = 0.0;
    double x_hat = 0.0;
    double zeta = 0.0;
    double alpha = 0.0;
    double delta_dagger = 0.0;
};
K0DaggerResult compute_K0_dagger(const Context& ctx);

// Decide which regime the instance belongs to, computing lazily only the
// thresholds the decision path needs. Throws InvalidProblem for invalid data.
Classification classify(const ProblemData& data);
Classification classify(const Context& ctx);

}  // namespace switchopt
