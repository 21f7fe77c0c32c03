#pragma once

#include <cmath>
#include <complex>

#include "eit4/errors.hpp"

namespace eit4 {

using cplx = std::complex<double>;

/// Relaxation constants of the level scheme, rad/s.
/// gamma21: nonradiative decay of the ground-state coherence (may be 0);
/// Gamma3, Gamma4: spontaneous decay of the two excited levels.
struct DecayRates {
    double gamma21;
    double Gamma3;
    double Gamma4;

    double max_rate() const { return std::max({gamma21, Gamma3, Gamma4}); }
    double min_rate() const { return std::min({gamma21, Gamma3, Gamma4}); }

    /// Finite and nonnegative; with require_decaying also Gamma3,Gamma4 > 0.
    void validate(bool require_decaying = true) const {
        if (!std::isfinite(gamma21) || !std::isfinite(Gamma3) || !std::isfinite(Gamma4))
            throw InvalidInput("decay rates must be finite");
        if (gamma21 < 0 || Gamma3 < 0 || Gamma4 < 0)
            throw InvalidInput("decay rates must be nonnegative");
        if (require_decaying && (Gamma3 <= 0 || Gamma4 <= 0))
            throw InvalidInput("Gamma3 and Gamma4 must be positive");
    }
};

/// Complex Rabi frequencies of the three beams, rad/s.
struct RabiFields {
    cplx omega_c;    // coupling, |2>-|3>
    cplx omega_p;    // probe, |1>-|3>
    cplx omega_24;   // signal, |2>-|4>

    double max_magnitude() const {
        return std::max({std::abs(omega_c), std::abs(omega_p), std::abs(omega_24)});
    }

    void validate() const {
        if (!std::isfinite(omega_c.real()) || !std::isfinite(omega_c.imag()) ||
            !std::isfinite(omega_p.real()) || !std::isfinite(omega_p.imag()) ||
            !std::isfinite(omega_24.real()) || !std::isfinite(omega_24.imag()))
            throw InvalidInput("Rabi frequencies must be finite");
    }
};

/// Probability amplitudes of levels |2>, |3>, |4>; a1 is pinned to 1.
struct Amplitudes {
    cplx a2;
    cplx a3;
    cplx a4;
};

/// Optional medium data for absolute (SI) susceptibility output.
struct MediumConstants {
    double atom_density;   // atoms / m^3
    double dipole_31;      // C*m

    void validate() const {
        if (!(atom_density > 0) || !(dipole_31 > 0))
            throw InvalidInput("atom_density and dipole_31 must be positive");
    }
};

enum class Regime { weak_signal, strong_signal, general };

constexpr const char* to_string(Regime r) {
    switch (r) {
        case Regime::weak_signal:   return "weak_signal";
        case Regime::strong_signal: return "strong_signal";
        default:                    return "general";
    }
}

}  // namespace eit4
