// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eit4/asymptotic.hpp"
#include "eit4/cubic.hpp"
#include "eit4/oracle.hpp"
#include "eit4/response.hpp"
#include "eit4/transient.hpp"
#include "testutil.hpp"

using namespace eit4;
using testutil::cplx;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// shared sampler: random parameter sets, re-drawn while the mode matrix is
// poorly conditioned (conditioning robustness is not what these criteria
// measure)
testutil::ParamSet draw_usable(std::mt19937_64& rng,
                               transient::ModeDecomposition* decomp) {
    for (;;) {
        const auto p = testutil::draw_params(rng);
        try {
            auto d = transient::decompose(p.decay, p.fields);
            if (d.fit_condition < 1e6) {
                if (decomp) *decomp = std::move(d);
                return p;
            }
        } catch (const Error&) {
        }
    }
}

// ------------------------------------------------------------- criterion 1

Check criterion1() {
    Check c;
    std::mt19937_64 rng(0xE17D5EED);
    double worst = 0;

    auto one = [&](const DecayRates& d, const RabiFields& f,
                   const transient::ModeDecomposition& decomp) {
        const double speed = d.max_rate() + f.max_magnitude();
        const auto init = transient::initial_amplitudes(f);
        const auto rk4 =
            oracle::integrate_reduced(d, f, init, {0.01 / speed, 1e-7});
        std::vector<double> ts(rk4.size());
        for (size_t i = 0; i < rk4.size(); ++i) ts[i] = rk4[i].t;
        const auto an = transient::evolve_trace(decomp, ts);
        double dev = 0, scale = 0;
        for (size_t i = 0; i < rk4.size(); ++i) {
            dev = std::max(dev, testutil::amp_dist(an[i].a, rk4[i].a));
            scale = std::max(scale, testutil::amp_norm(an[i].a));
        }
        worst = std::max(worst, dev / scale);
    };

    {
        const auto d = testutil::sodium_decay();
        const auto f = testutil::sodium_fields();
        one(d, f, transient::decompose(d, f));
    }
    for (int k = 0; k < 50; ++k) {
        transient::ModeDecomposition decomp;
        const auto p = draw_usable(rng, &decomp);
        one(p.decay, p.fields, decomp);
    }
    c.require(worst < 1e-5, "max rel deviation " + fmt(worst));
    c.note("max rel dev " + fmt(worst) + " over 51 sets");
    return c;
}

// ------------------------------------------------------------- criterion 2

Check criterion2() {
    Check c;
    std::mt19937_64 rng(0xC0B1C);
    std::uniform_real_distribution<double> exp10(6.0, 9.0);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    double worst_res = 0, worst_vieta = 0;
    for (int i = 0; i < 1000; ++i) {
        const double sb = std::pow(10.0, exp10(rng));
        const double sc = std::pow(10.0, exp10(rng));
        const double sd = std::pow(10.0, exp10(rng));
        const cubic::CubicCoefficients k{std::polar(sb, ph(rng)),
                                         std::polar(sc * sc, ph(rng)),
                                         std::polar(sd * sd * sd, ph(rng))};
        const auto s = cubic::solve_characteristic(k);
        for (const auto& l : s.lambdas) {
            const double scale = cubic::residual_scale(k, l);
            worst_res = std::max(worst_res, std::abs(cubic::residual(k, l)) /
                                                (scale * scale * scale));
        }
        const cplx l1 = s.lambdas[0], l2 = s.lambdas[1], l3 = s.lambdas[2];
        const double lm =
            std::max({std::abs(l1), std::abs(l2), std::abs(l3), std::abs(k.b)});
        worst_vieta = std::max(
            {worst_vieta, std::abs(l1 + l2 + l3 + 3.0 * k.b) / (3 * lm),
             std::abs(l1 * l2 + l1 * l3 + l2 * l3 - 3.0 * k.c) / (3 * lm * lm),
             std::abs(l1 * l2 * l3 + k.d) / (lm * lm * lm)});
    }
    c.require(worst_res < 1e-9, "cubic residual " + fmt(worst_res));
    c.require(worst_vieta < 1e-9, "Vieta deviation " + fmt(worst_vieta));

    // exact coincidence with the factorized limits
    const DecayRates d0{0, 1.2e8, 2.5e8};
    {
        const RabiFields f{{4.8e8, 0}, {4.8e6, 0}, {0, 0}};
        const auto s = cubic::solve_characteristic(
            cubic::characteristic_coefficients(d0, f));
        const double om = std::sqrt(4 * std::norm(f.omega_c) - d0.Gamma3 * d0.Gamma3);
        const std::array<cplx, 3> want{cplx{-d0.Gamma4 / 2, 0},
                                       cplx{-d0.Gamma3 / 4, om / 4},
                                       cplx{-d0.Gamma3 / 4, -om / 4}};
        const double dev = testutil::spectrum_distance(s.lambdas, want);
        c.require(dev < 1e-10, "weak-limit coincidence " + fmt(dev));
    }
    {
        const RabiFields f{{0, 0}, {4.8e6, 0}, {4.8e9, 0}};
        const auto s = cubic::solve_characteristic(
            cubic::characteristic_coefficients(d0, f));
        const double omp =
            std::sqrt(4 * std::norm(f.omega_24) - d0.Gamma4 * d0.Gamma4);
        const std::array<cplx, 3> want{cplx{-d0.Gamma3 / 2, 0},
                                       cplx{-d0.Gamma4 / 4, omp / 4},
                                       cplx{-d0.Gamma4 / 4, -omp / 4}};
        const double dev = testutil::spectrum_distance(s.lambdas, want);
        c.require(dev < 1e-10, "strong-limit coincidence " + fmt(dev));
    }
    c.note("residual " + fmt(worst_res) + ", Vieta " + fmt(worst_vieta));
    return c;
}

// ------------------------------------------------------------- criterion 3

Check criterion3() {
    Check c;
    std::mt19937_64 rng(0x57EAD);
    double worst_direct = 0, worst_an = 0, worst_rk = 0;

    auto one = [&](const DecayRates& d, const RabiFields& f,
                   const transient::ModeDecomposition& decomp) {
        const auto st = decomp.steady.amps;
        const double st_norm = testutil::amp_norm(st);

        const auto sys = model::build_system(d, f);
        const auto direct = testutil::gauss3(
            sys.m, {-sys.forcing[0], -sys.forcing[1], -sys.forcing[2]});
        worst_direct = std::max(
            worst_direct,
            testutil::amp_dist(st, {direct[0], direct[1], direct[2]}) / st_norm);

        const double t_star = 50.0 / d.min_rate();
        worst_an = std::max(worst_an, testutil::amp_dist(
                                          transient::evolve(decomp, t_star), st) /
                                          st_norm);

        const double speed = d.max_rate() + f.max_magnitude();
        const auto fin = oracle::integrate_reduced_final(
            d, f, transient::initial_amplitudes(f), {0.045 / speed, t_star});
        worst_rk = std::max(worst_rk, testutil::amp_dist(fin, st) / st_norm);
    };

    {
        const auto d = testutil::sodium_decay();
        const auto f = testutil::sodium_fields();
        one(d, f, transient::decompose(d, f));
    }
    for (int k = 0; k < 50; ++k) {
        transient::ModeDecomposition decomp;
        const auto p = draw_usable(rng, &decomp);
        one(p.decay, p.fields, decomp);
    }
    c.require(worst_direct < 1e-10, "closed form vs direct solve " + fmt(worst_direct));
    c.require(worst_an < 1e-6, "analytic trace at 50/min-rate " + fmt(worst_an));
    c.require(worst_rk < 1e-6, "rk4 trace at 50/min-rate " + fmt(worst_rk));
    c.note("direct " + fmt(worst_direct) + ", analytic " + fmt(worst_an) +
           ", rk4 " + fmt(worst_rk));
    return c;
}

// ------------------------------------------------------------- criterion 4

Check criterion4() {
    Check c;
    const DecayRates d{3e6, 1.2e8, 2.5e8};
    const auto grid = testutil::linspace(5e-7, 2000);

    for (const double fac : {0.5, 1.0, 2.0, 4.0}) {
        const double oc = fac * d.Gamma3;
        const RabiFields f{{oc, 0}, {0.01 * oc, 0}, {0.1 * oc, 0}};
        const auto sol = asymptotic::weak_solution(d, f, /*force=*/true);
        std::vector<double> chi(grid.size());
        for (size_t i = 0; i < grid.size(); ++i)
            chi[i] = d.Gamma3 * (sol.a3(grid[i]) / std::conj(f.omega_p)).imag();
        const std::string tag = "oc=" + fmt(oc);

        c.require(chi[0] == 0.0, tag + ": im_chi(0) != 0");

        const double steady =
            d.Gamma3 * response::weak_steady_chi(d, f).imag();
        c.require(std::abs(chi.back() - steady) <= 1e-4 * steady,
                  tag + ": terminal " + fmt(chi.back()) + " vs " + fmt(steady));

        const auto osc = testutil::find_oscillation(grid, chi);
        if (fac == 0.5) {
            // critically damped branch: a single overshoot, no oscillation
            c.require(osc.valleys == 0,
                      tag + ": oscillation events " + std::to_string(osc.valleys));
        } else {
            c.require(osc.peaks.size() >= 2, tag + ": too few peaks");
            if (osc.peaks.size() >= 2) {
                const double period = testutil::mean_period(osc.peaks);
                const double want = 8 * M_PI / std::sqrt(sol.omega_sq);
                c.require(std::abs(period - want) / want < 0.02,
                          tag + ": period " + fmt(period) + " vs " + fmt(want));
                const double rate = -testutil::envelope_rate(osc.peaks, steady);
                c.require(std::abs(rate - d.Gamma3 / 4) / (d.Gamma3 / 4) < 0.05,
                          tag + ": envelope " + fmt(rate) + " vs " + fmt(d.Gamma3 / 4));
            }
        }
    }
    if (c.ok) c.note("4 series: start 0, period/envelope/terminal within bounds");
    return c;
}

// ------------------------------------------------------------- criterion 5

Check criterion5() {
    Check c;
    const DecayRates d{3e6, 1.2e8, 2.5e8};
    const double oc = 4 * d.Gamma3;
    const auto grid = testutil::linspace(2e-7, 2000);
    double prev = 0;
    std::string terms;
    for (const double fac : {2.0, 5.0, 20.0, 100.0}) {
        const RabiFields f{{oc, 0}, {0.1 * oc, 0}, {fac * oc, 0}};
        const auto sol = asymptotic::strong_solution(d, f, /*force=*/true);
        const double terminal =
            d.Gamma3 * (sol.a3(grid.back()) / std::conj(f.omega_p)).imag();
        c.require(terminal > prev, "terminal not increasing at factor " + fmt(fac));
        prev = terminal;
        terms += (terms.empty() ? "" : ", ") + fmt(terminal);
        if (fac == 100.0)
            c.require(std::abs(terminal - 1.0) < 0.01,
                      "factor-100 terminal " + fmt(terminal));
    }
    c.note("terminals " + terms);
    return c;
}

// ------------------------------------------------------------- criterion 6

Check criterion6() {
    Check c;
    const DecayRates base{3e6, 1.2e8, 2.5e8};
    const auto grid = testutil::linspace(1e-7, 1500);

    auto sup_err = [&](const DecayRates& d, const RabiFields& f,
                       const std::function<cplx(double)>& closed, double* rel) {
        const auto decomp = transient::decompose(d, f);
        const auto exact = transient::evolve_trace(decomp, grid);
        double sup = 0, scale = 0;
        for (size_t i = 0; i < grid.size(); ++i) {
            sup = std::max(sup, std::abs(closed(grid[i]) - exact[i].a.a3));
            scale = std::max(scale, std::abs(exact[i].a.a3));
        }
        *rel = sup / scale;
        return sup;
    };

    const std::array<double, 3> rs{0.1, 0.03, 0.01};
    std::array<double, 3> weak_abs{}, weak_rel{}, strong_abs{}, strong_rel{};
    for (int i = 0; i < 3; ++i) {
        const double r = rs[i];
        const DecayRates d{0.025 * base.Gamma3 * (r / 0.1), base.Gamma3, base.Gamma4};

        const double oc = 4 * base.Gamma3;
        const RabiFields fw{{oc, 0}, {0.01 * oc, 0}, {r * oc, 0}};
        const auto wsol = asymptotic::weak_solution(d, fw, true);
        weak_abs[i] =
            sup_err(d, fw, [&](double t) { return wsol.a3(t); }, &weak_rel[i]);

        const double o24 = 40 * base.Gamma3;
        const RabiFields fs{{r * o24, 0}, {0.1 * r * o24, 0}, {o24, 0}};
        const auto ssol = asymptotic::strong_solution(d, fs, true);
        strong_abs[i] =
            sup_err(d, fs, [&](double t) { return ssol.a3(t); }, &strong_rel[i]);
    }

    for (int i = 1; i < 3; ++i) {
        c.require(weak_abs[i] < weak_abs[i - 1], "weak error not decreasing");
        c.require(strong_abs[i] < strong_abs[i - 1], "strong error not decreasing");
        c.require(weak_rel[i] < weak_rel[i - 1], "weak relative error not decreasing");
        c.require(strong_rel[i] < strong_rel[i - 1],
                  "strong relative error not decreasing");
    }
    c.require(weak_abs[0] / weak_abs[2] >= 5.0,
              "weak reduction " + fmt(weak_abs[0] / weak_abs[2]));
    c.require(strong_abs[0] / strong_abs[2] >= 5.0,
              "strong reduction " + fmt(strong_abs[0] / strong_abs[2]));
    c.note("weak sup err " + fmt(weak_abs[0]) + "->" + fmt(weak_abs[2]) + " (rel " +
           fmt(weak_rel[0]) + "->" + fmt(weak_rel[2]) + "), strong " +
           fmt(strong_abs[0]) + "->" + fmt(strong_abs[2]) + " (rel " +
           fmt(strong_rel[0]) + "->" + fmt(strong_rel[2]) + ")");
    return c;
}

// ------------------------------------------------------------- criterion 7

Check criterion7() {
    Check c;
    std::mt19937_64 rng(0x4EC1B);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = testutil::draw_params(rng);
        const auto a = cubic::solve_characteristic(
            cubic::characteristic_coefficients(p.decay, p.fields));
        const auto [ds, fs] = asymptotic::reciprocity_swap(p.decay, p.fields);
        const auto b =
            cubic::solve_characteristic(cubic::characteristic_coefficients(ds, fs));
        worst = std::max(worst, testutil::spectrum_distance(a.lambdas, b.lambdas));
    }
    c.require(worst < 1e-12, "eigenvalue multiset deviation " + fmt(worst));
    c.note("worst multiset deviation " + fmt(worst));
    return c;
}

// ------------------------------------------------------------- criterion 8

Check criterion8() {
    Check c;
    const DecayRates d{0, 1.2e8, 2.5e8};
    const double oc = 4 * d.Gamma3;
    std::string vals;
    for (const double r : {0.05, 0.1}) {
        const RabiFields f{{oc, 0}, {0.01 * oc, 0}, {r * oc, 0}};
        const double ratio = response::weak_nonlinear_chi3(d, f) /
                             response::two_level_chi1(d.Gamma4, f.omega_24);
        c.require(std::abs(ratio - r * r) <= 0.02 * r * r,
                  "ratio " + fmt(ratio) + " vs r^2 " + fmt(r * r));
        vals += (vals.empty() ? "" : ", ") + fmt(ratio / (r * r));
    }
    c.note("ratio/r^2 = " + vals);
    return c;
}

// ------------------------------------------------------------- criterion 9

Check criterion9() {
    Check c;
    const auto d = testutil::sodium_decay();
    const auto f = testutil::sodium_fields();   // omega_p = 0.01 omega_c
    const auto init2 = transient::initial_amplitudes(f);
    const auto trace = oracle::integrate_full(
        d, f, {cplx{1, 0}, init2.a2, {0, 0}, {0, 0}}, {1e-12, 1e-7, 8});
    double drift = 0;
    for (const auto& p : trace)
        drift = std::max(drift, std::abs(p.a[0] - cplx{1, 0}));
    c.require(drift < 0.01, "max |a1 - 1| = " + fmt(drift));
    c.note("max |a1 - 1| = " + fmt(drift));
    return c;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Check()> run;
        double budget_s;   // 0: no stated bound
    };
    const std::vector<Entry> entries = {
        {1, "oracle equivalence (reference + 50 random sets, 100 ns)", criterion1, 10},
        {2, "cubic correctness (Vieta, residuals, factorized limits)", criterion2, 1},
        {3, "steady state (closed form, direct solve, long-time traces)", criterion3, 0},
        {4, "damped-oscillation series shape", criterion4, 5},
        {5, "strong-signal saturation toward 1/Gamma3", criterion5, 5},
        {6, "asymptotic convergence of the closed forms", criterion6, 5},
        {7, "level reciprocity of the spectrum", criterion7, 1},
        {8, "two-photon switch ratio", criterion8, 0},
        {9, "a1 ~ 1 validity bound", criterion9, 0},
    };

    int failures = 0;
    for (const auto& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.ok = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (e.budget_s > 0 && secs >= e.budget_s) {
            c.ok = false;
            c.detail += (c.detail.empty() ? "" : "; ") + std::string("runtime ") +
                        fmt(secs) + " s over budget " + fmt(e.budget_s) + " s";
        }
        if (!c.ok) ++failures;
        std::printf("criterion %d %s: %s [%.2f s]%s%s\n", e.id,
                    c.ok ? "PASS" : "FAIL", e.name, secs,
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures;
}
