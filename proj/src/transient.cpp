#include "eit4/transient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eit4/kernels/mode_sum.hpp"

namespace eit4::transient {

namespace {

using v3 = std::array<cplx, 3>;
using m33 = std::array<v3, 3>;

double norm2(const v3& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

// bilinear cross product; orthogonal to both rows under the plain dot product
v3 cross(const v3& a, const v3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// 3x3 solve, partial pivoting
v3 solve3(m33 a, v3 rhs) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        if (std::abs(a[col][col]) == 0.0)
            throw IllConditionedModes(std::numeric_limits<double>::infinity());
        for (int r = col + 1; r < 3; ++r) {
            const cplx f = a[r][col] / a[col][col];
            for (int cc = col; cc < 3; ++cc) a[r][cc] -= f * a[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    v3 x{};
    for (int r = 2; r >= 0; --r) {
        cplx s = rhs[r];
        for (int cc = r + 1; cc < 3; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return x;
}

double norm1(const m33& a) {
    double best = 0;
    for (int c = 0; c < 3; ++c) {
        double s = 0;
        for (int r = 0; r < 3; ++r) s += std::abs(a[r][c]);
        best = std::max(best, s);
    }
    return best;
}

// condition estimate via the adjugate inverse
double cond1(const m33& a) {
    const cplx det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (std::abs(det) == 0.0) return std::numeric_limits<double>::infinity();
    m33 inv;
    inv[0] = {a[1][1] * a[2][2] - a[1][2] * a[2][1],
              a[0][2] * a[2][1] - a[0][1] * a[2][2],
              a[0][1] * a[1][2] - a[0][2] * a[1][1]};
    inv[1] = {a[1][2] * a[2][0] - a[1][0] * a[2][2],
              a[0][0] * a[2][2] - a[0][2] * a[2][0],
              a[0][2] * a[1][0] - a[0][0] * a[1][2]};
    inv[2] = {a[1][0] * a[2][1] - a[1][1] * a[2][0],
              a[0][1] * a[2][0] - a[0][0] * a[2][1],
              a[0][0] * a[1][1] - a[0][1] * a[1][0]};
    for (auto& row : inv)
        for (auto& e : row) e /= det;
    return norm1(a) * norm1(inv);
}

v3 matvec(const m33& a, const v3& x) {
    return {a[0][0] * x[0] + a[0][1] * x[1] + a[0][2] * x[2],
            a[1][0] * x[0] + a[1][1] * x[1] + a[1][2] * x[2],
            a[2][0] * x[0] + a[2][1] * x[1] + a[2][2] * x[2]};
}

double matnorm(const m33& a) {
    double s = 0;
    for (const auto& row : a)
        for (const auto& e : row) s += std::norm(e);
    return std::sqrt(s);
}

kernels::ModeSum to_mode_sum(const ModeDecomposition& d) {
    kernels::ModeSum s;
    s.lambda = d.spectrum.lambdas;
    const Amplitudes& st = d.steady.amps;
    s.offset = {st.a2, st.a3, st.a4};
    for (int comp = 0; comp < 3; ++comp)
        for (int n = 0; n < 3; ++n)
            s.weight[comp][n] = d.coeffs[n] * d.vectors[n][comp];
    return s;
}

}  // namespace

SteadyState steady_state(const DecayRates& decay, const RabiFields& fields) {
    decay.validate();
    fields.validate();
    const double D = std::norm(fields.omega_c) * decay.Gamma4 +
                     decay.gamma21 * decay.Gamma3 * decay.Gamma4 +
                     std::norm(fields.omega_24) * decay.Gamma3;
    if (!(D > 0)) throw SingularSteadyState{};
    const cplx opc = std::conj(fields.omega_p);
    const cplx i{0, 1};
    return {Amplitudes{
        -opc * fields.omega_c * decay.Gamma4 / D,
        i * opc * (std::norm(fields.omega_24) + decay.gamma21 * decay.Gamma4) / D,
        -i * opc * fields.omega_c * std::conj(fields.omega_24) / D,
    }};
}

std::array<std::array<cplx, 3>, 3> mode_vectors(const cubic::Spectrum& spectrum,
                                                const DecayRates& decay,
                                                const RabiFields& fields) {
    decay.validate();
    fields.validate();
    const auto sys = model::build_system(decay, fields);
    const double eps_den = 1e-6 * decay.max_rate();
    const double mnorm = matnorm(sys.m);
    const cplx i{0, 1};

    std::array<v3, 3> out;
    for (int n = 0; n < 3; ++n) {
        const cplx lam = spectrum.lambdas[n];
        const cplx d3 = decay.Gamma3 + 2.0 * lam;
        const cplx d4 = decay.Gamma4 + 2.0 * lam;

        v3 v;
        if (std::abs(d3) > eps_den && std::abs(d4) > eps_den) {
            v = {cplx{1, 0}, i * std::conj(fields.omega_c) / d3,
                 i * std::conj(fields.omega_24) / d4};
        } else {
            // null space of (m - lambda I) from the largest adjugate row pair
            m33 a = sys.m;
            for (int r = 0; r < 3; ++r) a[r][r] -= lam;
            const v3 cands[3] = {cross(a[0], a[1]), cross(a[0], a[2]),
                                 cross(a[1], a[2])};
            v = cands[0];
            for (const auto& cand : cands)
                if (norm2(cand) > norm2(v)) v = cand;
            const double nv = norm2(v);
            if (nv == 0.0) throw DefectiveMatrix{};
            if (std::abs(v[0]) >= 1e-6 * nv) {
                const cplx s = v[0];
                for (auto& e : v) e /= s;
            } else {
                // unit norm, largest component real positive
                int big = 0;
                for (int k = 1; k < 3; ++k)
                    if (std::abs(v[k]) > std::abs(v[big])) big = k;
                const cplx phase = std::abs(v[big]) / v[big];
                for (auto& e : v) e *= phase / nv;
            }
        }

        m33 a = sys.m;
        for (int r = 0; r < 3; ++r) a[r][r] -= lam;
        const v3 res = matvec(a, v);
        if (norm2(res) > 1e-9 * mnorm * norm2(v)) throw DefectiveMatrix{};
        out[n] = v;
    }
    return out;
}

Amplitudes initial_amplitudes(const RabiFields& fields) {
    fields.validate();
    if (std::abs(fields.omega_c) == 0.0) throw ZeroCoupling{};
    return {-std::conj(fields.omega_p) / std::conj(fields.omega_c), {0, 0}, {0, 0}};
}

FitResult fit_coefficients(const Amplitudes& init, const SteadyState& steady,
                           const cubic::Spectrum&,
                           const std::array<std::array<cplx, 3>, 3>& vectors) {
    m33 V;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) V[r][c] = vectors[c][r];

    const double cond = cond1(V);
    if (!(cond <= 1e12)) throw IllConditionedModes(cond);

    const v3 rhs = {init.a2 - steady.amps.a2, init.a3 - steady.amps.a3,
                    init.a4 - steady.amps.a4};
    return {solve3(V, rhs), cond};
}

ModeDecomposition decompose(const DecayRates& decay, const RabiFields& fields) {
    ModeDecomposition d;
    d.system = model::build_system(decay, fields);
    d.spectrum = cubic::solve_characteristic(
        cubic::characteristic_coefficients(decay, fields));
    d.vectors = mode_vectors(d.spectrum, decay, fields);
    d.steady = steady_state(decay, fields);
    const auto fit =
        fit_coefficients(initial_amplitudes(fields), d.steady, d.spectrum, d.vectors);
    d.coeffs = fit.coeffs;
    d.fit_condition = fit.condition;
    return d;
}

Amplitudes evolve(const ModeDecomposition& decomp, double t) {
    if (!(t >= 0)) throw InvalidInput("evolve requires t >= 0");
    const auto sum = to_mode_sum(decomp);
    cplx a2, a3, a4;
    const double tt[1] = {t};
    kernels::eval_mode_sum_scalar(sum, std::span<const double>(tt, 1),
                                  std::span<cplx>(&a2, 1), std::span<cplx>(&a3, 1),
                                  std::span<cplx>(&a4, 1));
    return {a2, a3, a4};
}

std::vector<TracePoint> evolve_trace(const ModeDecomposition& decomp,
                                     std::span<const double> t_grid) {
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0)) throw InvalidInput("trace grid requires t >= 0");
        if (i > 0 && t_grid[i] < t_grid[i - 1])
            throw InvalidInput("trace grid must be monotone nondecreasing");
    }
    const auto sum = to_mode_sum(decomp);
    std::vector<cplx> a2(t_grid.size()), a3(t_grid.size()), a4(t_grid.size());
    kernels::eval_mode_sum(sum, t_grid, a2, a3, a4);

    std::vector<TracePoint> out(t_grid.size());
    for (size_t i = 0; i < t_grid.size(); ++i)
        out[i] = {t_grid[i], Amplitudes{a2[i], a3[i], a4[i]}};
    return out;
}

}  // namespace eit4::transient
