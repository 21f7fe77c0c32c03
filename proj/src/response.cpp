#include "eit4/response.hpp"

#include <cmath>

#include "eit4/asymptotic.hpp"

namespace eit4::response {

cplx SusceptibilitySample::in_unit(ChiUnit unit) const {
    switch (unit) {
        case ChiUnit::seconds:       return chi_norm;
        case ChiUnit::absolute:
            if (!chi_absolute)
                throw InvalidInput("absolute unit requires atom_density and dipole_31");
            return *chi_absolute;
        default:                     return chi_dimensionless;
    }
}

SusceptibilitySample chi_from_a3(cplx a3, const RabiFields& fields,
                                 const DecayRates& decay,
                                 const std::optional<MediumConstants>& constants,
                                 double t) {
    fields.validate();
    decay.validate();
    if (std::abs(fields.omega_p) == 0.0) throw ZeroProbe{};

    SusceptibilitySample s;
    s.t = t;
    s.chi_norm = a3 / std::conj(fields.omega_p);
    s.chi_dimensionless = decay.Gamma3 * s.chi_norm;
    if (constants) {
        constants->validate();
        const double scale = 2.0 * constants->atom_density *
                             constants->dipole_31 * constants->dipole_31 /
                             (model::epsilon0 * model::hbar);
        s.chi_absolute = scale * s.chi_norm;
    }
    return s;
}

std::vector<SusceptibilitySample> weak_chi_trace(
    const DecayRates& decay, const RabiFields& fields, std::span<const double> t_grid,
    bool force, const std::optional<MediumConstants>& constants) {
    const auto sol = asymptotic::weak_solution(decay, fields, force);
    std::vector<SusceptibilitySample> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid)
        out.push_back(chi_from_a3(sol.a3(t), fields, decay, constants, t));
    return out;
}

cplx weak_steady_chi(const DecayRates& decay, const RabiFields& fields) {
    decay.validate();
    fields.validate();
    const double D = std::norm(fields.omega_c) * decay.Gamma4 +
                     decay.gamma21 * decay.Gamma3 * decay.Gamma4 +
                     std::norm(fields.omega_24) * decay.Gamma3;
    if (!(D > 0)) throw SingularSteadyState{};
    return cplx{0, 1} *
           ((std::norm(fields.omega_24) + decay.gamma21 * decay.Gamma4) / D);
}

double weak_nonlinear_chi3(const DecayRates& decay, const RabiFields& fields) {
    decay.validate();
    fields.validate();
    const double den = std::norm(fields.omega_c) * decay.Gamma4 +
                       std::norm(fields.omega_24) * decay.Gamma3;
    if (!(den > 0)) return 0.0;
    return std::norm(fields.omega_24) / den;
}

double two_level_chi1(double Gamma, cplx omega) {
    if (!(Gamma > 0)) throw InvalidInput("two-level decay rate must be positive");
    if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
        throw InvalidInput("two-level drive must be finite");
    return 1.0 / Gamma;
}

StrongSteadyChi strong_steady_chi(const DecayRates& decay, const RabiFields& fields,
                                  int n_terms, bool force) {
    if (n_terms < 1) throw InvalidInput("n_terms must be >= 1");
    if (!force) {
        const Regime got = model::validate_regime(decay, fields);
        if (got != Regime::strong_signal)
            throw RegimeViolation(std::string("parameters classify as ") +
                                  to_string(got) +
                                  ", not strong_signal; pass force to evaluate anyway");
    }
    decay.validate();
    fields.validate();

    const double o24_sq = std::norm(fields.omega_24);
    if (!(o24_sq > 0)) throw SeriesDivergent{};
    const double x =
        std::norm(fields.omega_c) * decay.Gamma4 / (o24_sq * decay.Gamma3);
    if (x >= 1.0) throw SeriesDivergent{};

    double sum = 0.0, term = 1.0;
    for (int k = 0; k < n_terms; ++k) {
        sum += term;
        term *= -x;
    }
    return {weak_steady_chi(decay, fields), cplx{0, 1} * (sum / decay.Gamma3)};
}

}  // namespace eit4::response
