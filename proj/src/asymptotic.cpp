#include "eit4/asymptotic.hpp"

#include <cmath>
#include <string>

namespace eit4::asymptotic {

namespace {

// cos(sqrt(w2)*t/4) and sin(sqrt(w2)*t/4)/sqrt(w2) as functions of the signed
// square w2, entire in w2: series near zero, trig for w2 > 0, hyperbolic for
// w2 < 0. The series window |w2*t^2/16| < 1e-8 keeps the switch continuous to
// ~1e-33 absolute.
struct TrigPair {
    double c;   // cos-like
    double s;   // sin-like / omega (has units of time)
};

TrigPair trig_pair(double w2, double t) {
    const double x2 = w2 * t * t / 16.0;
    if (std::abs(x2) < 1e-8) {
        const double c = 1.0 - x2 / 2.0 + x2 * x2 / 24.0 - x2 * x2 * x2 / 720.0;
        const double s =
            (t / 4.0) * (1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0);
        return {c, s};
    }
    if (w2 > 0) {
        const double w = std::sqrt(w2);
        return {std::cos(w * t / 4.0), std::sin(w * t / 4.0) / w};
    }
    const double w = std::sqrt(-w2);
    return {std::cosh(w * t / 4.0), std::sinh(w * t / 4.0) / w};
}

void require_regime(Regime want, const DecayRates& decay, const RabiFields& fields,
                    bool force, const model::RegimeThresholds& th) {
    if (force) return;
    const Regime got = model::validate_regime(decay, fields, th);
    if (got != want)
        throw RegimeViolation(std::string("parameters classify as ") + to_string(got) +
                              ", not " + to_string(want) +
                              "; pass force to evaluate anyway");
}

}  // namespace

// ----------------------------------------------------------------- weak form

cplx WeakSignalSolution::omega() const { return std::sqrt(cplx{omega_sq, 0.0}); }

std::array<cplx, 3> WeakSignalSolution::lambdas() const {
    const cplx io = cplx{0, 1} * omega();
    return {cplx{-decay.Gamma4 / 2, 0}, (cplx{-decay.Gamma3, 0} + io) / 4.0,
            (cplx{-decay.Gamma3, 0} - io) / 4.0};
}

cplx WeakSignalSolution::a2(double t) const {
    const TrigPair tp = trig_pair(omega_sq, t);
    return -2.0 * cplx{0, 1} * steady.amps.a3 * fields.omega_c * tp.s *
               std::exp(-decay.Gamma3 * t / 4.0) +
           steady.amps.a2;
}

cplx WeakSignalSolution::a3(double t) const {
    const auto [c, s] = trig_pair(omega_sq, t);
    const double bracket = c - decay.Gamma3 * s;
    return steady.amps.a3 * (1.0 - std::exp(-decay.Gamma3 * t / 4.0) * bracket);
}

cplx WeakSignalSolution::a4(double t) const {
    const double G3 = decay.Gamma3, G4 = decay.Gamma4;
    const auto [c, s] = trig_pair(omega_sq, t);
    const double dk = (G4 / 2 - G3 / 4) * (G4 / 2 - G3 / 4) + omega_sq / 16.0;
    const cplx pre =
        steady.amps.a3 * std::conj(fields.omega_24) * fields.omega_c / dk;
    const double e3 = std::exp(-G3 * t / 4.0);
    const double e4 = std::exp(-G4 * t / 2.0);
    return pre * (e3 * ((G4 / 2 - G3 / 4) * s - c / 4.0) + e4 / 4.0) +
           steady.amps.a2 * (cplx{0, 1} * std::conj(fields.omega_24) / G4) *
               (1.0 - e4);
}

WeakSignalSolution weak_solution(const DecayRates& decay, const RabiFields& fields,
                                 bool force, const model::RegimeThresholds& th) {
    require_regime(Regime::weak_signal, decay, fields, force, th);
    return {decay, fields, transient::steady_state(decay, fields),
            4.0 * std::norm(fields.omega_c) - decay.Gamma3 * decay.Gamma3};
}

// --------------------------------------------------------------- strong form

cplx StrongSignalSolution::omega_prime() const {
    return std::sqrt(cplx{omega_prime_sq, 0.0});
}

std::array<cplx, 3> StrongSignalSolution::lambdas() const {
    const cplx io = cplx{0, 1} * omega_prime();
    return {cplx{-decay.Gamma3 / 2, 0}, (cplx{-decay.Gamma4, 0} + io) / 4.0,
            (cplx{-decay.Gamma4, 0} - io) / 4.0};
}

std::array<cplx, 3> StrongSignalSolution::coefficients() const {
    const cplx op = omega_prime();
    const cplx P = std::conj(fields.omega_p) / std::conj(fields.omega_c);
    const cplx i{0, 1};
    const Amplitudes& st = steady.amps;
    const cplx c2 = (-2.0 * st.a4 * fields.omega_24 - 2.0 * st.a2 * op +
                     i * (decay.Gamma4 - i * op) * (P + st.a2)) /
                        (2.0 * op) -
                    P;
    const cplx c3 = (2.0 * st.a4 * fields.omega_24 -
                     i * (decay.Gamma4 - i * op) * (P + st.a2)) /
                    (2.0 * op);
    return {cplx{0, 0}, c2, c3};
}

namespace {

// Mode-2/3 contribution to the strong a3, written without 1/Omega' factors:
//   F(t) = i conj(oc) e^{-G4 t/4} [ (2AS - C)(i Y0 + iOp Y1) / (2 den)
//                                   - (P + a2s)(C + iOp S)(A - iOp/2) / den ]
// with A = G3 - G4/2, den = A^2 + Op^2/4, Y0 = -2 a4s o24 + i G4 (P + a2s),
// Y1 = P + a2s. Equal to the textbook per-mode sum wherever that is defined.
struct StrongA3Eval {
    double G3, G4, w2;
    cplx oc_conj, iop, p_plus_a2s, a_minus;
    double A, den;
    cplx iY0_plus_iopY1;

    explicit StrongA3Eval(const StrongSignalSolution& s) {
        G3 = s.decay.Gamma3;
        G4 = s.decay.Gamma4;
        w2 = s.omega_prime_sq;
        oc_conj = std::conj(s.fields.omega_c);
        iop = cplx{0, 1} * s.omega_prime();
        const cplx P = std::conj(s.fields.omega_p) / std::conj(s.fields.omega_c);
        const Amplitudes& st = s.steady.amps;
        const cplx Y0 =
            -2.0 * st.a4 * s.fields.omega_24 + cplx{0, 1} * G4 * (P + st.a2);
        const cplx Y1 = P + st.a2;
        p_plus_a2s = P + st.a2;
        A = G3 - G4 / 2;
        den = A * A + w2 / 4.0;
        iY0_plus_iopY1 = cplx{0, 1} * Y0 + iop * Y1;
        a_minus = cplx{A, 0} - iop / 2.0;
    }

    cplx F(double t) const {
        const auto [c, sdi] = trig_pair(w2, t);
        const cplx term1 = (2.0 * A * sdi - c) * iY0_plus_iopY1 / (2.0 * den);
        const cplx term2 = -p_plus_a2s * (c + iop * sdi) * a_minus / den;
        return cplx{0, 1} * oc_conj * std::exp(-G4 * t / 4.0) * (term1 + term2);
    }
};

}  // namespace

cplx StrongSignalSolution::a2(double t) const {
    const auto cs = coefficients();
    const auto ls = lambdas();
    cplx a = steady.amps.a2;
    for (int n = 1; n < 3; ++n) a += cs[n] * std::exp(ls[n] * t);
    return a;
}

cplx StrongSignalSolution::a3(double t) const {
    const StrongA3Eval ev(*this);
    const cplx st = cplx{0, 1} *
                    (std::conj(fields.omega_c) * steady.amps.a2 +
                     std::conj(fields.omega_p)) /
                    decay.Gamma3;
    const double e1 = std::exp(-decay.Gamma3 * t / 2.0);
    return ev.F(t) - e1 * ev.F(0.0) + st * (1.0 - e1);
}

cplx StrongSignalSolution::a4(double t) const {
    const auto cs = coefficients();
    const auto ls = lambdas();
    const cplx i{0, 1};
    cplx a = steady.amps.a4;
    for (int n = 0; n < 3; ++n) {
        const cplx d4 = decay.Gamma4 + 2.0 * ls[n];
        if (std::abs(cs[n]) == 0.0) continue;
        a += cs[n] * i * std::conj(fields.omega_24) / d4 * std::exp(ls[n] * t);
    }
    return a;
}

StrongSignalSolution strong_solution(const DecayRates& decay, const RabiFields& fields,
                                     bool force, const model::RegimeThresholds& th) {
    require_regime(Regime::strong_signal, decay, fields, force, th);
    if (std::abs(fields.omega_c) == 0.0) throw ZeroCoupling{};
    return {decay, fields, transient::steady_state(decay, fields),
            4.0 * std::norm(fields.omega_24) - decay.Gamma4 * decay.Gamma4};
}

// --------------------------------------------------------------- reciprocity

std::pair<DecayRates, RabiFields> reciprocity_swap(const DecayRates& decay,
                                                   const RabiFields& fields) {
    return {DecayRates{decay.gamma21, decay.Gamma4, decay.Gamma3},
            RabiFields{fields.omega_24, fields.omega_p, fields.omega_c}};
}

}  // namespace eit4::asymptotic
