#pragma once

#include <stdexcept>
#include <string>

namespace switchopt {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem data violates an invariant (bad parameters, payoff outside the
// supported family, integrability gate failure).
struct InvalidProblem : Error {
    using Error::Error;
};

// A weighted integral was requested over an endpoint where one of its terms
// is not integrable.
struct DivergentIntegral : Error {
    using Error::Error;
};

// A scalar root finder exhausted its bracket-expansion budget. Carries the
// name of the equation being solved so callers can surface it.
struct RootNotBracketed : Error {
    explicit RootNotBracketed(const std::string& equation)
        : Error("root not bracketed: " + equation), equation_name(equation) {}
    std::string equation_name;
};

// An operation was called outside the classification branch it belongs to.
struct PreconditionViolated : Error {
    using Error::Error;
};

// Simulation configuration fails its invariants.
struct InvalidConfig : Error {
    using Error::Error;
};

// A boundary perturbation breaks the case ordering invariants.
struct InvalidPerturbation : Error {
    using Error::Error;
};

// Second derivative requested exactly at a free boundary or payoff step.
struct UndefinedSecondDerivative : Error {
    using Error::Error;
};

}  // namespace switchopt
