#pragma once

#include <array>
#include <span>

#include "eit4/types.hpp"

namespace eit4::kernels {

/// Closed-form trace kernel: for every grid time t it evaluates
///   a_comp(t) = offset[comp] + sum_n weight[comp][n] * exp(lambda[n] * t)
/// for the three amplitude components. This is the hot inner loop of every
/// trace command, so it has a scalar reference implementation and an AVX2
/// variant selected at runtime and checked for equivalence in the tests.
struct ModeSum {
    std::array<cplx, 3> lambda;                   // mode exponents
    std::array<std::array<cplx, 3>, 3> weight;    // [component][mode]
    std::array<cplx, 3> offset;                   // steady contribution
};

enum class Backend { scalar, avx2 };

bool backend_available(Backend backend);

/// Runtime choice: EIT4_KERNEL=scalar|avx2 overrides (silently falling back
/// to scalar if the requested lane is unsupported); otherwise the widest
/// available lane.
Backend selected_backend();

/// Evaluate the mode sum over the grid into the three component arrays
/// (all spans must have t.size() elements).
void eval_mode_sum(const ModeSum& sum, std::span<const double> t,
                   std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4,
                   Backend backend);

inline void eval_mode_sum(const ModeSum& sum, std::span<const double> t,
                          std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4) {
    eval_mode_sum(sum, t, a2, a3, a4, selected_backend());
}

// Individual lanes (avx2 throws InvalidInput when unsupported).
void eval_mode_sum_scalar(const ModeSum& sum, std::span<const double> t,
                          std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4);
void eval_mode_sum_avx2(const ModeSum& sum, std::span<const double> t,
                        std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4);

// Vector-math probes for the equivalence tests: evaluate the AVX2 exp and
// sin/cos on 4 packed doubles. Throw InvalidInput when AVX2 is unavailable.
void avx2_exp4(const double in[4], double out[4]);
void avx2_sincos4(const double in[4], double s[4], double c[4]);

}  // namespace eit4::kernels
