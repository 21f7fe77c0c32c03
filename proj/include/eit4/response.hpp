#pragma once

#include <optional>
#include <span>
#include <vector>

#include "eit4/model.hpp"
#include "eit4/types.hpp"

namespace eit4::response {

enum class ChiUnit { dimensionless, seconds, absolute };

/// Probe susceptibility derived from a3 (rho_31 ~ a3).
/// chi_norm = a3 / conj(omega_p), units of seconds (the normalized figure
/// unit leaves one power of time); chi_dimensionless = Gamma3 * chi_norm;
/// chi_absolute multiplies by 2 N |mu_31|^2 / (eps0 hbar) when medium
/// constants are supplied.
struct SusceptibilitySample {
    double t = 0.0;
    cplx chi_norm;
    cplx chi_dimensionless;
    std::optional<cplx> chi_absolute;

    cplx in_unit(ChiUnit unit) const;
};

/// Throws ZeroProbe when omega_p = 0.
SusceptibilitySample chi_from_a3(cplx a3, const RabiFields& fields,
                                 const DecayRates& decay,
                                 const std::optional<MediumConstants>& constants = {},
                                 double t = 0.0);

/// Susceptibility trace of the weak-signal closed form over the grid.
/// Purely imaginary when all Rabi frequencies are real.
std::vector<SusceptibilitySample> weak_chi_trace(
    const DecayRates& decay, const RabiFields& fields, std::span<const double> t_grid,
    bool force = false, const std::optional<MediumConstants>& constants = {});

/// Steady susceptibility i*(|o24|^2 + g21*G4)/(|oc|^2*G4 + g21*G3*G4 + |o24|^2*G3)
/// in chi_norm units (seconds). Regime-independent algebra of the steady state.
cplx weak_steady_chi(const DecayRates& decay, const RabiFields& fields);

/// Leading nonlinear absorption |o24|^2/(|oc|^2*G4 + |o24|^2*G3): the
/// gamma21 -> 0 imaginary part of the steady susceptibility, chi_norm units.
double weak_nonlinear_chi3(const DecayRates& decay, const RabiFields& fields);

/// Steady Im chi of a resonantly driven two-level system, chi_norm units:
/// 1/Gamma. The drive omega cancels out of the normalized value.
double two_level_chi1(double Gamma, cplx omega);

struct StrongSteadyChi {
    cplx exact;
    cplx series;
};

/// exact: the steady susceptibility; series: (i/Gamma3) * sum_{k<n_terms}
/// (-|oc|^2*G4 / (|o24|^2*G3))^k, converging to the gamma21 -> 0 value.
/// Throws SeriesDivergent when the ratio is >= 1.
StrongSteadyChi strong_steady_chi(const DecayRates& decay, const RabiFields& fields,
                                  int n_terms, bool force = false);

}  // namespace eit4::response
