#include "eit4/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace eit4::cubic {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kResidualBound = 1e-10;

}  // namespace

CubicCoefficients characteristic_coefficients(const DecayRates& decay,
                                              const RabiFields& fields) {
    decay.validate(/*require_decaying=*/false);
    fields.validate();
    const double g = decay.gamma21, G3 = decay.Gamma3, G4 = decay.Gamma4;
    const double oc2 = std::norm(fields.omega_c);
    const double o242 = std::norm(fields.omega_24);
    return {
        cplx{(g + G3 + G4) / 6.0, 0.0},
        cplx{(g * G3 + G4 * (g + G3) + oc2 + o242) / 12.0, 0.0},
        cplx{(G4 * (g * G3 + oc2) + G3 * o242) / 8.0, 0.0},
    };
}

cplx residual(const CubicCoefficients& k, cplx lambda) {
    return ((lambda + 3.0 * k.b) * lambda + 3.0 * k.c) * lambda + k.d;
}

double residual_scale(const CubicCoefficients& k, cplx lambda) {
    return std::max({std::abs(lambda), std::abs(k.b),
                     std::sqrt(std::abs(k.c)), std::cbrt(std::abs(k.d))});
}

Spectrum solve_characteristic(const CubicCoefficients& k, CardanoWork* work) {
    if (!finite(k.b) || !finite(k.c) || !finite(k.d))
        throw InvalidInput("cubic coefficients must be finite");

    const cplx b = k.b, c = k.c, d = k.d;
    const cplx p = c - b * b;
    const cplx q = d - 3.0 * b * c + 2.0 * b * b * b;
    const cplx Delta = 4.0 * p * p * p + q * q;

    cplx s = std::sqrt(Delta);
    if (std::abs(-q + s) < std::abs(-q - s)) s = -s;
    const cplx T = (-q + s) / 2.0;

    cplx u{0, 0}, v{0, 0};
    if (std::abs(T) > 0) {
        u = std::pow(T, 1.0 / 3.0);
        v = -p / u;
    }
    // T == 0 forces q = 0 and p = 0 (branch chosen to maximize |T|): triple root -b.

    const cplx w{-0.5, std::sqrt(3.0) / 2.0};
    if (work) *work = {p, q, Delta, u, v, w};

    std::array<cplx, 3> roots = {
        u + v - b,
        u * w + v * (w * w) - b,
        u * (w * w) + v * w - b,
    };

    // Newton polish; keep the best iterate per root.
    for (auto& r : roots) {
        cplx best = r;
        double best_res = std::abs(residual(k, r));
        cplx x = r;
        for (int it = 0; it < 5; ++it) {
            const cplx f = residual(k, x);
            const cplx fp = (3.0 * x + 6.0 * b) * x + 3.0 * c;
            if (!finite(f) || !finite(fp) || std::abs(fp) == 0.0) break;
            x -= f / fp;
            if (!finite(x)) break;
            const double res = std::abs(residual(k, x));
            if (res < best_res) {
                best = x;
                best_res = res;
            }
        }
        r = best;
    }

    for (const auto& r : roots) {
        if (!finite(r)) throw DegenerateCubic{};
        // evaluate the residual of the scale-normalized polynomial so the
        // check stays meaningful when scale^3 would overflow; negated form so
        // a NaN residual also fails
        const double s = residual_scale(k, r);
        if (s == 0.0) {
            if (std::abs(residual(k, r)) != 0.0) throw DegenerateCubic{};
            continue;
        }
        const cplx y = r / s;
        const cplx bs = k.b / s, cs = k.c / (s * s), ds = k.d / (s * s * s);
        const cplx scaled = ((y + 3.0 * bs) * y + 3.0 * cs) * y + ds;
        if (!(std::abs(scaled) <= kResidualBound)) throw DegenerateCubic{};
    }

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx bb) {
        if (a.real() != bb.real()) return a.real() > bb.real();
        return a.imag() < bb.imag();
    });
    return {roots};
}

}  // namespace eit4::cubic
