#pragma once

#include <array>

#include "eit4/types.hpp"

namespace eit4::model {

// Fixed physical constants (2018 CODATA), used only for absolute susceptibility.
inline constexpr double epsilon0 = 8.8541878128e-12;   // F/m
inline constexpr double hbar     = 1.054571817e-34;    // J*s

/// Coefficient matrix and forcing vector of the driven linear system
/// d/dt (a2,a3,a4) = m*(a2,a3,a4) + forcing.
///
/// m decomposes as D + iH with D = diag(-gamma21/2, -Gamma3/2, -Gamma4/2)
/// real and H Hermitian; m[1][2] = m[2][1] = 0 (no direct |3>-|4> coupling).
struct SystemMatrix {
    std::array<std::array<cplx, 3>, 3> m;
    std::array<cplx, 3> forcing;          // (0, (i/2) conj(omega_p), 0)
};

/// Assemble the coefficient matrix and forcing from the physical parameters.
/// Pure; rejects non-finite inputs. Linear in each Rabi field and decay rate.
SystemMatrix build_system(const DecayRates& decay, const RabiFields& fields);

/// Classification thresholds for the two closed-form regimes.
/// ratio gates the field quotient (|omega_24| vs |omega_c|); rate gates the
/// smallness of |omega_p| and the decay rates against |omega_c|.
struct RegimeThresholds {
    double ratio = 0.2;
    double rate  = 1.0;
};

/// weak_signal  iff |omega_24| <= ratio*|omega_c| and
///              max(|omega_p|, gamma21, Gamma3, Gamma4) <= rate*|omega_c|;
/// strong_signal iff |omega_c| <= ratio*|omega_24| and the same rate condition;
/// general otherwise. Pure function of the magnitudes.
Regime validate_regime(const DecayRates& decay, const RabiFields& fields,
                       const RegimeThresholds& thresholds = {});

}  // namespace eit4::model
