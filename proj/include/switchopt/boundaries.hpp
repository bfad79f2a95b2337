#pragma once

#include <optional>
#include <string>
#include <vector>

#include "switchopt/classify.hpp"
#include "switchopt/systems.hpp"

namespace switchopt {

// Free boundaries of a solved case; absent when the case has no such
// boundary. In the abandon-when-open regimes (II.2, III.1) `delta` holds the
// K0-independent threshold delta_dagger.
struct FreeBoundaries {
    std::optional<double> zeta;
    std::optional<double> delta;
    std::optional<double> gamma;
    std::optional<double> beta;
    std::optional<double> alpha;
};

struct Coefficients {
    std::optional<double> A;
    std::optional<double> B;
    std::optional<double> Gamma1;
    std::optional<double> Gamma2;
    std::optional<double> Delta1;
    std::optional<double> Delta2;
};

struct CaseSolution {
    FreeBoundaries boundaries;
    Coefficients coefficients;
};

// Solve the free-boundary system of the given regime. Callers obtain the
// regime from classify(); the system preconditions trip PreconditionViolated
// when invoked on data outside the regime.
CaseSolution solve_case(const Context& ctx, CaseId id);

// classify() + solve_case() in one step.
CaseSolution solve_case_checked(const ProblemData& data, CaseId expected);

// Strict ordering required of the boundaries in each regime (also used to
// vet perturbed policies). Returns false when violated.
bool ordering_holds(CaseId id, const FreeBoundaries& b);

// Residuals of the defining equations at a boundary set, each with the scale
// max |additive term| used by the tolerance residual <= 1e-10 * scale.
struct Residual {
    std::string equation;
    double value = 0.0;
    double scale = 0.0;
};
std::vector<Residual> case_residuals(const Context& ctx, CaseId id,
                                     const FreeBoundaries& b);

}  // namespace switchopt
