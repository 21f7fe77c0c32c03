#include "eit4/model.hpp"

namespace eit4::model {

SystemMatrix build_system(const DecayRates& decay, const RabiFields& fields) {
    decay.validate(/*require_decaying=*/false);
    fields.validate();

    const cplx ih{0.0, 0.5};  // i/2

    SystemMatrix s;
    s.m[0] = {cplx{-decay.gamma21 / 2, 0}, ih * fields.omega_c, ih * fields.omega_24};
    s.m[1] = {ih * std::conj(fields.omega_c), cplx{-decay.Gamma3 / 2, 0}, cplx{0, 0}};
    s.m[2] = {ih * std::conj(fields.omega_24), cplx{0, 0}, cplx{-decay.Gamma4 / 2, 0}};
    s.forcing = {cplx{0, 0}, ih * std::conj(fields.omega_p), cplx{0, 0}};
    return s;
}

Regime validate_regime(const DecayRates& decay, const RabiFields& fields,
                       const RegimeThresholds& th) {
    decay.validate(false);
    fields.validate();

    const double oc = std::abs(fields.omega_c);
    const double o24 = std::abs(fields.omega_24);
    const double small = std::max({std::abs(fields.omega_p), decay.gamma21,
                                   decay.Gamma3, decay.Gamma4});

    const bool rates_small = small <= th.rate * oc;
    if (o24 <= th.ratio * oc && rates_small) return Regime::weak_signal;
    if (oc <= th.ratio * o24 && rates_small) return Regime::strong_signal;
    return Regime::general;
}

}  // namespace eit4::model
