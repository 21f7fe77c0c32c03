#pragma once

#include <stdexcept>
#include <string>

namespace eit4 {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or physically inadmissible inputs (CLI maps these to exit code 2).
struct InvalidInput : Error {
    using Error::Error;
};

struct ZeroCoupling : InvalidInput {
    ZeroCoupling() : InvalidInput("omega_c = 0: dark-state initial condition undefined") {}
};

struct ZeroProbe : InvalidInput {
    ZeroProbe() : InvalidInput("omega_p = 0: susceptibility undefined") {}
};

struct SingularSteadyState : InvalidInput {
    SingularSteadyState()
        : InvalidInput("steady-state denominator vanishes (all couplings and gamma21*Gamma3*Gamma4 zero)") {}
};

struct SeriesDivergent : InvalidInput {
    SeriesDivergent()
        : InvalidInput("steady susceptibility series diverges: |omega_c|^2*Gamma4 >= |omega_24|^2*Gamma3") {}
};

struct StepTooLarge : InvalidInput {
    StepTooLarge() : InvalidInput("integrator step violates dt*(max rate + max |omega|) <= 0.05") {}
};

// Closed form asked to run outside its validity regime (CLI exit code 3).
struct RegimeViolation : Error {
    using Error::Error;
};

// Numerical breakdowns (CLI exit code 4).
struct NumericalError : Error {
    using Error::Error;
};

struct DegenerateCubic : NumericalError {
    DegenerateCubic()
        : NumericalError("cubic root polishing failed residual bound; rescale units") {}
};

struct DefectiveMatrix : NumericalError {
    DefectiveMatrix()
        : NumericalError("repeated eigenvalue with deficient eigenspace; no mode basis") {}
};

struct IllConditionedModes : NumericalError {
    explicit IllConditionedModes(double cond)
        : NumericalError("mode-vector matrix condition number " + std::to_string(cond) +
                         " exceeds 1e12 (near-defective spectrum)") {}
};

struct NoConvergence : NumericalError {
    NoConvergence() : NumericalError("eigenvalue refinement did not converge in 50 iterations") {}
};

}  // namespace eit4
