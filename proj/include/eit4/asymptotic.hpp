#pragma once

#include <array>
#include <utility>

#include "eit4/model.hpp"
#include "eit4/transient.hpp"
#include "eit4/types.hpp"

namespace eit4::asymptotic {

/// Weak-signal closed form (|omega_24| << |omega_c|).
///
/// omega_sq = 4|omega_c|^2 - Gamma3^2 is kept as a signed real; when it is
/// negative the trigonometric pair continues to its hyperbolic form, so the
/// solution stays finite through the critically damped point omega_sq = 0
/// (reached at |omega_c| = Gamma3/2).
struct WeakSignalSolution {
    DecayRates decay;
    RabiFields fields;
    transient::SteadyState steady;
    double omega_sq;

    /// Generalized Rabi frequency as a complex number (principal sqrt).
    cplx omega() const;

    /// {-Gamma4/2, (-Gamma3 + i*Omega)/4, (-Gamma3 - i*Omega)/4}
    std::array<cplx, 3> lambdas() const;

    cplx a2(double t) const;
    cplx a3(double t) const;   // a3s*{1 - e^{-G3 t/4}[cos(Om t/4) - (G3/Om) sin(Om t/4)]}
    cplx a4(double t) const;
    Amplitudes at(double t) const { return {a2(t), a3(t), a4(t)}; }
};

/// Strong-signal closed form (|omega_24| >> |omega_c|).
///
/// omega_prime_sq = 4|omega_24|^2 - Gamma4^2, hyperbolic continuation below
/// threshold. a3 is evaluated in a rearranged form with no 1/Omega' factors,
/// so a3(0) = 0 holds exactly and the Omega' -> 0 limit is regular; the raw
/// per-mode coefficients (see coefficients()) do carry 1/Omega' and are only
/// meaningful away from that point.
struct StrongSignalSolution {
    DecayRates decay;
    RabiFields fields;
    transient::SteadyState steady;
    double omega_prime_sq;

    cplx omega_prime() const;

    /// {-Gamma3/2, (-Gamma4 + i*Omega')/4, (-Gamma4 - i*Omega')/4}
    std::array<cplx, 3> lambdas() const;

    /// a2-slot mode coefficients; the first (the -Gamma3/2 mode) is 0.
    std::array<cplx, 3> coefficients() const;

    cplx a2(double t) const;   // direct mode sum from coefficients()
    cplx a3(double t) const;   // stable form, a3(0) = 0 exactly
    cplx a4(double t) const;   // direct mode sum from coefficients()
    Amplitudes at(double t) const { return {a2(t), a3(t), a4(t)}; }
};

/// Build the weak-signal solution. Unless force is set, requires
/// validate_regime(...) == weak_signal and throws RegimeViolation otherwise.
WeakSignalSolution weak_solution(const DecayRates& decay, const RabiFields& fields,
                                 bool force = false,
                                 const model::RegimeThresholds& thresholds = {});

StrongSignalSolution strong_solution(const DecayRates& decay, const RabiFields& fields,
                                     bool force = false,
                                     const model::RegimeThresholds& thresholds = {});

/// Exchange (omega_c, Gamma3) <-> (omega_24, Gamma4); gamma21 and omega_p are
/// untouched. Involution. Leaves the eigenvalue multiset invariant.
std::pair<DecayRates, RabiFields> reciprocity_swap(const DecayRates& decay,
                                                   const RabiFields& fields);

}  // namespace eit4::asymptotic
