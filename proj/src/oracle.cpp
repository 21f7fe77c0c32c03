#include "eit4/oracle.hpp"

#include <cmath>
#include <cstdint>

namespace eit4::oracle {

namespace {

struct Params {
    double g21, G3, G4;
    cplx oc, op, o24, oc_c, op_c, o24_c;
};

Params make_params(const DecayRates& decay, const RabiFields& fields) {
    return {decay.gamma21, decay.Gamma3,         decay.Gamma4,
            fields.omega_c, fields.omega_p,      fields.omega_24,
            std::conj(fields.omega_c), std::conj(fields.omega_p),
            std::conj(fields.omega_24)};
}

int64_t step_count(const DecayRates& decay, const RabiFields& fields,
                   const IntegratorConfig& cfg) {
    decay.validate();
    fields.validate();
    if (!(cfg.dt > 0) || !(cfg.t_end > 0) || cfg.record_stride < 1)
        throw InvalidInput("integrator needs dt > 0, t_end > 0, record_stride >= 1");
    const double speed = decay.max_rate() + fields.max_magnitude();
    if (cfg.dt * speed > 0.05) throw StepTooLarge{};
    return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(
                                    cfg.t_end / cfg.dt * (1.0 - 1e-12))));
}

struct State3 {
    cplx a2, a3, a4;
};

State3 rhs3(const Params& p, const State3& s) {
    const cplx i2{0, 0.5};
    return {i2 * (p.oc * s.a3 + p.o24 * s.a4) - (p.g21 / 2) * s.a2,
            i2 * (p.oc_c * s.a2 + p.op_c) - (p.G3 / 2) * s.a3,
            i2 * (p.o24_c * s.a2) - (p.G4 / 2) * s.a4};
}

State3 rk4_step3(const Params& p, const State3& s, double dt) {
    const State3 k1 = rhs3(p, s);
    const State3 s2{s.a2 + dt / 2 * k1.a2, s.a3 + dt / 2 * k1.a3, s.a4 + dt / 2 * k1.a4};
    const State3 k2 = rhs3(p, s2);
    const State3 s3{s.a2 + dt / 2 * k2.a2, s.a3 + dt / 2 * k2.a3, s.a4 + dt / 2 * k2.a4};
    const State3 k3 = rhs3(p, s3);
    const State3 s4{s.a2 + dt * k3.a2, s.a3 + dt * k3.a3, s.a4 + dt * k3.a4};
    const State3 k4 = rhs3(p, s4);
    return {s.a2 + dt / 6 * (k1.a2 + 2.0 * k2.a2 + 2.0 * k3.a2 + k4.a2),
            s.a3 + dt / 6 * (k1.a3 + 2.0 * k2.a3 + 2.0 * k3.a3 + k4.a3),
            s.a4 + dt / 6 * (k1.a4 + 2.0 * k2.a4 + 2.0 * k3.a4 + k4.a4)};
}

using State4 = std::array<cplx, 4>;

State4 rhs4(const Params& p, const State4& s) {
    const cplx i2{0, 0.5};
    return {i2 * p.op * s[2],
            i2 * (p.oc * s[2] + p.o24 * s[3]) - (p.g21 / 2) * s[1],
            i2 * (p.oc_c * s[1] + p.op_c * s[0]) - (p.G3 / 2) * s[2],
            i2 * (p.o24_c * s[1]) - (p.G4 / 2) * s[3]};
}

State4 rk4_step4(const Params& p, const State4& s, double dt) {
    auto axpy = [](const State4& a, double h, const State4& b) {
        State4 r;
        for (int k = 0; k < 4; ++k) r[k] = a[k] + h * b[k];
        return r;
    };
    const State4 k1 = rhs4(p, s);
    const State4 k2 = rhs4(p, axpy(s, dt / 2, k1));
    const State4 k3 = rhs4(p, axpy(s, dt / 2, k2));
    const State4 k4 = rhs4(p, axpy(s, dt, k3));
    State4 r;
    for (int k = 0; k < 4; ++k)
        r[k] = s[k] + dt / 6 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    return r;
}

}  // namespace

std::vector<transient::TracePoint> integrate_reduced(const DecayRates& decay,
                                                     const RabiFields& fields,
                                                     const Amplitudes& init,
                                                     const IntegratorConfig& cfg) {
    const int64_t n = step_count(decay, fields, cfg);
    const double dt = cfg.t_end / static_cast<double>(n);
    const Params p = make_params(decay, fields);

    std::vector<transient::TracePoint> out;
    out.reserve(static_cast<size_t>(n / cfg.record_stride) + 2);
    State3 s{init.a2, init.a3, init.a4};
    out.push_back({0.0, {s.a2, s.a3, s.a4}});
    for (int64_t k = 1; k <= n; ++k) {
        s = rk4_step3(p, s, dt);
        if (k % cfg.record_stride == 0 || k == n)
            out.push_back({k * dt, {s.a2, s.a3, s.a4}});
    }
    return out;
}

Amplitudes integrate_reduced_final(const DecayRates& decay, const RabiFields& fields,
                                   const Amplitudes& init, const IntegratorConfig& cfg) {
    const int64_t n = step_count(decay, fields, cfg);
    const double dt = cfg.t_end / static_cast<double>(n);
    const Params p = make_params(decay, fields);
    State3 s{init.a2, init.a3, init.a4};
    for (int64_t k = 0; k < n; ++k) s = rk4_step3(p, s, dt);
    return {s.a2, s.a3, s.a4};
}

std::vector<TracePoint4> integrate_full(const DecayRates& decay,
                                        const RabiFields& fields,
                                        const std::array<cplx, 4>& init,
                                        const IntegratorConfig& cfg) {
    const int64_t n = step_count(decay, fields, cfg);
    const double dt = cfg.t_end / static_cast<double>(n);
    const Params p = make_params(decay, fields);

    std::vector<TracePoint4> out;
    out.reserve(static_cast<size_t>(n / cfg.record_stride) + 2);
    State4 s = init;
    out.push_back({0.0, s});
    for (int64_t k = 1; k <= n; ++k) {
        s = rk4_step4(p, s, dt);
        if (k % cfg.record_stride == 0 || k == n) out.push_back({k * dt, s});
    }
    return out;
}

// --------------------------------------------------------------- eigenvalues

namespace {

using v3 = std::array<cplx, 3>;
using m33 = std::array<v3, 3>;

double vnorm(const v3& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

double fro(const m33& a) {
    double s = 0;
    for (const auto& r : a)
        for (const auto& e : r) s += std::norm(e);
    return std::sqrt(s);
}

v3 mul(const m33& a, const v3& x) {
    return {a[0][0] * x[0] + a[0][1] * x[1] + a[0][2] * x[2],
            a[1][0] * x[0] + a[1][1] * x[1] + a[1][2] * x[2],
            a[2][0] * x[0] + a[2][1] * x[1] + a[2][2] * x[2]};
}

// partial-pivot solve; returns false on an exactly singular pivot
bool try_solve(m33 a, v3 rhs, v3& x) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) return false;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const cplx f = a[r][col] / a[col][col];
            for (int cc = col; cc < 3; ++cc) a[r][cc] -= f * a[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        cplx s = rhs[r];
        for (int cc = r + 1; cc < 3; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return true;
}

}  // namespace

cubic::Spectrum refine_eigenvalues(const model::SystemMatrix& m,
                                   const cubic::Spectrum& seeds) {
    const m33& A = m.m;
    const double anorm = fro(A);
    if (!(anorm > 0)) {
        // zero matrix: every seed refines to 0
        return {{cplx{0, 0}, cplx{0, 0}, cplx{0, 0}}};
    }

    cubic::Spectrum out;
    for (int s = 0; s < 3; ++s) {
        cplx lam = seeds.lambdas[s];
        if (!std::isfinite(lam.real()) || !std::isfinite(lam.imag()))
            throw InvalidInput("eigenvalue seeds must be finite");

        v3 x = {cplx{1.0, 0.0}, cplx{0.7, 0.2}, cplx{0.4, -0.3}};
        const double nx0 = vnorm(x);
        for (auto& e : x) e /= nx0;

        bool converged = false;
        for (int it = 0; it < 50; ++it) {
            m33 shifted = A;
            for (int r = 0; r < 3; ++r) shifted[r][r] -= lam;
            v3 y;
            if (!try_solve(shifted, x, y)) {
                // exactly singular shift: nudge off the eigenvalue
                lam += anorm * 1e-14 * cplx{1.0, 1.0};
                continue;
            }
            const double ny = vnorm(y);
            if (!(ny > 0) || !std::isfinite(ny)) {
                lam += anorm * 1e-14 * cplx{1.0, 1.0};
                continue;
            }
            for (auto& e : y) e /= ny;
            x = y;

            // Rayleigh quotient (x normalized)
            const v3 ax = mul(A, x);
            cplx rq{0, 0};
            for (int k = 0; k < 3; ++k) rq += std::conj(x[k]) * ax[k];
            // first iterations keep the fixed seed shift so the nearest
            // eigenvalue is targeted; then switch to Rayleigh updates
            if (it >= 2) lam = rq;

            v3 resv;
            for (int k = 0; k < 3; ++k) resv[k] = ax[k] - rq * x[k];
            if (vnorm(resv) < 1e-13 * anorm) {
                lam = rq;
                converged = true;
                break;
            }
        }
        if (!converged) throw NoConvergence{};
        out.lambdas[s] = lam;
    }
    return out;
}

}  // namespace eit4::oracle
