#pragma once

#include <array>

#include "eit4/types.hpp"

namespace eit4::cubic {

/// Coefficients of the characteristic cubic lambda^3 + 3b lambda^2 + 3c lambda + d = 0.
/// Units: rad/s, (rad/s)^2, (rad/s)^3. Real for physical inputs, complex allowed.
struct CubicCoefficients {
    cplx b;
    cplx c;
    cplx d;
};

/// Intermediates of the closed-form solution, exposed for verification.
/// w is the primitive cube root of unity (-1 + i sqrt(3))/2 exactly;
/// u*v = -p and Delta = 4p^3 + q^2 hold by construction.
struct CardanoWork {
    cplx p;
    cplx q;
    cplx Delta;
    cplx u;
    cplx v;
    cplx w;
};

/// The three eigenvalues, sorted by descending Re, ties by ascending Im.
/// Each satisfies |lambda^3 + 3b lambda^2 + 3c lambda + d| <= 1e-10 * scale^3
/// with scale = max(|lambda|, |b|, sqrt|c|, cbrt|d|).
struct Spectrum {
    std::array<cplx, 3> lambdas;
};

/// b = (g21+G3+G4)/6, c = (g21*G3 + G4*(g21+G3) + |omega_c|^2 + |omega_24|^2)/12,
/// d = (G4*(g21*G3 + |omega_c|^2) + G3*|omega_24|^2)/8.
/// Invariant under the exchange (omega_c, Gamma3) <-> (omega_24, Gamma4).
CubicCoefficients characteristic_coefficients(const DecayRates& decay,
                                              const RabiFields& fields);

/// Closed-form roots: lambda1 = u+v-b, lambda2 = uw+vw^2-b, lambda3 = uw^2+vw-b,
/// with p = c-b^2, q = d-3bc+2b^3, Delta = 4p^3+q^2 and the sqrt(Delta) branch
/// chosen to maximize |(-q+sqrt(Delta))/2| before taking the principal cube
/// root (avoids cancellation in v = -p/u). Each root then gets up to 5 Newton
/// iterations. Throws DegenerateCubic if the residual bound cannot be met
/// (pathological coefficient scaling).
Spectrum solve_characteristic(const CubicCoefficients& coeffs,
                              CardanoWork* work = nullptr);

/// Cubic residual lambda^3 + 3b lambda^2 + 3c lambda + d (Horner form).
cplx residual(const CubicCoefficients& coeffs, cplx lambda);

/// Scale used by the residual bound: max(|lambda|, |b|, sqrt|c|, cbrt|d|).
double residual_scale(const CubicCoefficients& coeffs, cplx lambda);

}  // namespace eit4::cubic
