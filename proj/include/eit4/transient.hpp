#pragma once

#include <span>
#include <vector>

#include "eit4/cubic.hpp"
#include "eit4/model.hpp"
#include "eit4/types.hpp"

namespace eit4::transient {

/// Particular (steady) solution of the driven system: m*amps + forcing = 0.
struct SteadyState {
    Amplitudes amps;
};

struct FitResult {
    std::array<cplx, 3> coeffs;   // per-mode a2-slot coefficients at t = 0
    double condition;             // 1-norm condition estimate of the mode matrix
};

/// Full decomposition: a(t) = sum_n coeffs[n] * vectors[n] * exp(lambda_n t) + steady.
struct ModeDecomposition {
    cubic::Spectrum spectrum;
    std::array<std::array<cplx, 3>, 3> vectors;   // [mode][component]
    std::array<cplx, 3> coeffs;
    SteadyState steady;
    double fit_condition;
    model::SystemMatrix system;
};

struct TracePoint {
    double t;
    Amplitudes a;
};

/// Closed-form steady state:
///   a2 = -conj(op)*oc*G4/D, a3 = i*conj(op)*(|o24|^2+g21*G4)/D,
///   a4 = -i*conj(op)*oc*conj(o24)/D, D = |oc|^2*G4 + g21*G3*G4 + |o24|^2*G3.
/// Throws SingularSteadyState when D = 0.
SteadyState steady_state(const DecayRates& decay, const RabiFields& fields);

/// Eigenvectors normalized to a2-slot 1 via the ratio form
///   (1, i*conj(oc)/(G3+2*lambda), i*conj(o24)/(G4+2*lambda));
/// falls back to an adjugate null-space vector when a denominator is within
/// 1e-6*max_rate of zero. Throws DefectiveMatrix if no candidate meets the
/// residual bound.
std::array<std::array<cplx, 3>, 3> mode_vectors(const cubic::Spectrum& spectrum,
                                                const DecayRates& decay,
                                                const RabiFields& fields);

/// Dark-state initial condition (-conj(op)/conj(oc), 0, 0).
/// Throws ZeroCoupling when omega_c = 0.
Amplitudes initial_amplitudes(const RabiFields& fields);

/// Solve V * coeffs = init - steady (V columns are the mode vectors).
/// Throws IllConditionedModes when cond(V) > 1e12.
FitResult fit_coefficients(const Amplitudes& init, const SteadyState& steady,
                           const cubic::Spectrum& spectrum,
                           const std::array<std::array<cplx, 3>, 3>& vectors);

/// Convenience pipeline: system, spectrum, vectors, steady, fit.
ModeDecomposition decompose(const DecayRates& decay, const RabiFields& fields);

/// Evaluate the general solution at one time (t >= 0).
Amplitudes evolve(const ModeDecomposition& decomp, double t);

/// Pointwise closed-form evaluation over a monotone nondecreasing grid.
/// No stepping, so no accumulation error; runs through the trace kernel.
std::vector<TracePoint> evolve_trace(const ModeDecomposition& decomp,
                                     std::span<const double> t_grid);

}  // namespace eit4::transient
