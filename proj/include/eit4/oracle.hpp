#pragma once

#include <array>
#include <vector>

#include "eit4/cubic.hpp"
#include "eit4/model.hpp"
#include "eit4/transient.hpp"
#include "eit4/types.hpp"

namespace eit4::oracle {

/// Fixed-step classical RK4. dt is the requested maximum step; the effective
/// step is t_end/N with N = ceil(t_end/dt) so the trace lands exactly on
/// t_end. record_stride > 1 keeps every k-th step (plus the final one).
/// Rejects configurations with dt*(max rate + max |omega|) > 0.05.
struct IntegratorConfig {
    double dt;
    double t_end;
    int record_stride = 1;
};

struct TracePoint4 {
    double t;
    std::array<cplx, 4> a;   // a1..a4
};

/// Integrate the reduced 3-amplitude system (a1 pinned to 1).
/// Independent of the cubic/transient modules: the right-hand side is
/// assembled inline from the parameters.
std::vector<transient::TracePoint> integrate_reduced(const DecayRates& decay,
                                                     const RabiFields& fields,
                                                     const Amplitudes& init,
                                                     const IntegratorConfig& cfg);

/// Final state only (no trace storage).
Amplitudes integrate_reduced_final(const DecayRates& decay, const RabiFields& fields,
                                   const Amplitudes& init, const IntegratorConfig& cfg);

/// Integrate all four amplitudes, including da1/dt = (i/2) omega_p a3.
std::vector<TracePoint4> integrate_full(const DecayRates& decay,
                                        const RabiFields& fields,
                                        const std::array<cplx, 4>& init,
                                        const IntegratorConfig& cfg);

/// Refine approximate eigenvalues of the 3x3 system matrix by inverse
/// iteration with a final Rayleigh-quotient polish. Returns eigenvalues with
/// relative residual below 1e-12; throws NoConvergence after 50 iterations.
cubic::Spectrum refine_eigenvalues(const model::SystemMatrix& m,
                                   const cubic::Spectrum& seeds);

}  // namespace eit4::oracle
