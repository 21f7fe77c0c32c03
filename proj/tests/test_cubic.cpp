#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eit4/cubic.hpp"
#include "eit4/model.hpp"
#include "eit4/oracle.hpp"
#include "testutil.hpp"

using namespace eit4;
using testutil::sodium_decay;
using testutil::sodium_fields;

namespace {

cubic::CubicCoefficients random_coeffs(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> exp10(6.0, 9.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const double sb = std::pow(10.0, exp10(rng));
    const double sc = std::pow(10.0, exp10(rng));
    const double sd = std::pow(10.0, exp10(rng));
    return {std::polar(sb, phase(rng)), std::polar(sc * sc, phase(rng)),
            std::polar(sd * sd * sd, phase(rng))};
}

}  // namespace

TEST_CASE("coefficients: zero inputs") {
    const auto k = cubic::characteristic_coefficients({0, 0, 0}, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(std::abs(k.b) == 0.0);
    CHECK(std::abs(k.c) == 0.0);
    CHECK(std::abs(k.d) == 0.0);
}

TEST_CASE("coefficients: reference-scale values") {
    const auto k = cubic::characteristic_coefficients(sodium_decay(), sodium_fields());
    // direct evaluation of the closed forms at Gamma3=1.2e8, Gamma4=2.5e8,
    // gamma21=3e6, |oc|=4.8e8, |o24|=4.8e7
    CHECK(k.b.real() == doctest::Approx(6.2166666666666664e7).epsilon(1e-12));
    CHECK(k.c.real() == doctest::Approx(2.19845e16).epsilon(1e-12));
    CHECK(k.d.real() == doctest::Approx(7.24581e24).epsilon(1e-12));
    CHECK(k.b.imag() == 0.0);
}

TEST_CASE("coefficients: match det(M - lambda I) expanded numerically") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        const auto p = testutil::draw_params(rng);
        const auto k = cubic::characteristic_coefficients(p.decay, p.fields);
        const auto sys = model::build_system(p.decay, p.fields);
        const auto kk = testutil::charpoly_from_matrix(sys.m);
        CHECK(testutil::rel_err(3.0 * k.b, kk[0]) < 1e-12);
        CHECK(testutil::rel_err(3.0 * k.c, kk[1]) < 1e-12);
        CHECK(testutil::rel_err(k.d, kk[2]) < 1e-12);
    }
}

TEST_CASE("coefficients: invariant under (omega_c,Gamma3) <-> (omega_24,Gamma4)") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 50; ++i) {
        const auto p = testutil::draw_params(rng);
        const auto a = cubic::characteristic_coefficients(p.decay, p.fields);
        const DecayRates ds{p.decay.gamma21, p.decay.Gamma4, p.decay.Gamma3};
        const RabiFields fs{p.fields.omega_24, p.fields.omega_p, p.fields.omega_c};
        const auto b = cubic::characteristic_coefficients(ds, fs);
        CHECK(testutil::rel_err(a.b, b.b) < 1e-14);
        CHECK(testutil::rel_err(a.c, b.c) < 1e-14);
        CHECK(testutil::rel_err(a.d, b.d) < 1e-14);
    }
}

TEST_CASE("solve: unit cubic lambda^3 = 1") {
    const auto s = cubic::solve_characteristic({{0, 0}, {0, 0}, {-1, 0}});
    // descending Re, ties ascending Im
    CHECK(std::abs(s.lambdas[0] - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(s.lambdas[1] - cplx{-0.5, -std::sqrt(3.0) / 2}) < 1e-14);
    CHECK(std::abs(s.lambdas[2] - cplx{-0.5, std::sqrt(3.0) / 2}) < 1e-14);
}

TEST_CASE("solve: zero coefficients give a triple root at 0") {
    const auto s = cubic::solve_characteristic({{0, 0}, {0, 0}, {0, 0}});
    for (const auto& l : s.lambdas) CHECK(std::abs(l) == 0.0);
}

TEST_CASE("solve: exact triple root -b") {
    const auto s = cubic::solve_characteristic({{1e8, 0}, {1e16, 0}, {1e24, 0}});
    for (const auto& l : s.lambdas) CHECK(testutil::rel_err(l, cplx{-1e8, 0}) < 1e-7);
}

TEST_CASE("solve: weak-limit factorization gamma21 = omega_24 = 0") {
    const DecayRates d{0, 1.2e8, 2.5e8};
    const RabiFields f{{4.8e8, 0}, {4.8e6, 0}, {0, 0}};
    const auto s = cubic::solve_characteristic(cubic::characteristic_coefficients(d, f));
    const double om = std::sqrt(4 * 4.8e8 * 4.8e8 - 1.2e8 * 1.2e8);
    const std::array<cplx, 3> want = {cplx{-1.25e8, 0}, cplx{-3e7, om / 4},
                                      cplx{-3e7, -om / 4}};
    CHECK(testutil::spectrum_distance(s.lambdas, want) < 1e-10);
}

TEST_CASE("solve: strong-limit factorization gamma21 = omega_c = 0") {
    const DecayRates d{0, 1.2e8, 2.5e8};
    const double o24 = 4.8e9;
    const RabiFields f{{0, 0}, {4.8e6, 0}, {o24, 0}};
    const auto s = cubic::solve_characteristic(cubic::characteristic_coefficients(d, f));
    const double omp = std::sqrt(4 * o24 * o24 - 2.5e8 * 2.5e8);
    const std::array<cplx, 3> want = {cplx{-6e7, 0}, cplx{-6.25e7, omp / 4},
                                      cplx{-6.25e7, -omp / 4}};
    CHECK(testutil::spectrum_distance(s.lambdas, want) < 1e-10);
}

TEST_CASE("solve: residuals below 1e-10 on random triples") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto k = random_coeffs(rng);
        const auto s = cubic::solve_characteristic(k);
        for (const auto& l : s.lambdas) {
            const double scale = cubic::residual_scale(k, l);
            CHECK(std::abs(cubic::residual(k, l)) <= 1e-10 * scale * scale * scale);
        }
    }
}

TEST_CASE("solve: Vieta identities") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 200; ++i) {
        const auto k = random_coeffs(rng);
        const auto s = cubic::solve_characteristic(k);
        const cplx l1 = s.lambdas[0], l2 = s.lambdas[1], l3 = s.lambdas[2];
        const double lmax =
            std::max({std::abs(l1), std::abs(l2), std::abs(l3), std::abs(k.b)});
        CHECK(std::abs(l1 + l2 + l3 + 3.0 * k.b) <= 1e-9 * 3 * lmax);
        CHECK(std::abs(l1 * l2 + l1 * l3 + l2 * l3 - 3.0 * k.c) <=
              1e-9 * 3 * lmax * lmax);
        CHECK(std::abs(l1 * l2 * l3 + k.d) <= 1e-9 * lmax * lmax * lmax);
    }
}

TEST_CASE("cardano intermediates") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 50; ++i) {
        const auto k = random_coeffs(rng);
        cubic::CardanoWork w;
        cubic::solve_characteristic(k, &w);
        CHECK(w.w == cplx{-0.5, std::sqrt(3.0) / 2});
        CHECK(testutil::rel_err(w.Delta, 4.0 * w.p * w.p * w.p + w.q * w.q) < 1e-12);
        if (std::abs(w.u) > 0)
            CHECK(std::abs(w.u * w.v + w.p) <= 1e-12 * std::abs(w.p));
    }
}

TEST_CASE("solve agrees with matrix eigenvalue refinement") {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 40; ++i) {
        const auto p = testutil::draw_params(rng);
        const auto sys = model::build_system(p.decay, p.fields);
        const auto spec = cubic::solve_characteristic(
            cubic::characteristic_coefficients(p.decay, p.fields));
        const auto refined = oracle::refine_eigenvalues(sys, spec);
        CHECK(testutil::spectrum_distance(spec.lambdas, refined.lambdas) < 1e-9);
    }
}

TEST_CASE("eigenvalue multiset invariant under level swap") {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 200; ++i) {
        const auto p = testutil::draw_params(rng);
        const auto a = cubic::solve_characteristic(
            cubic::characteristic_coefficients(p.decay, p.fields));
        const DecayRates ds{p.decay.gamma21, p.decay.Gamma4, p.decay.Gamma3};
        const RabiFields fs{p.fields.omega_24, p.fields.omega_p, p.fields.omega_c};
        const auto b = cubic::solve_characteristic(
            cubic::characteristic_coefficients(ds, fs));
        CHECK(testutil::spectrum_distance(a.lambdas, b.lambdas) < 1e-12);
    }
}

TEST_CASE("pathological scaling raises DegenerateCubic") {
    // b^3 overflows while (b,c,d) stay finite
    CHECK_THROWS_AS(
        cubic::solve_characteristic({{1e150, 0}, {1.85e158, 0}, {2.25e166, 0}}),
        DegenerateCubic);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(cubic::solve_characteristic({{inf, 0}, {0, 0}, {0, 0}}),
                    InvalidInput);
}
