#include "eit4/kernels/mode_sum.hpp"

#include <cstdlib>
#include <cstring>

namespace eit4::kernels {

namespace detail {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace detail

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::scalar: return true;
        case Backend::avx2:   return detail::cpu_has_avx2();
    }
    return false;
}

Backend selected_backend() {
    if (const char* env = std::getenv("EIT4_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
            return Backend::avx2;
        if (std::strcmp(env, "avx2") == 0) return Backend::scalar;
    }
    return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

void eval_mode_sum_scalar(const ModeSum& sum, std::span<const double> t,
                          std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4) {
    if (a2.size() != t.size() || a3.size() != t.size() || a4.size() != t.size())
        throw InvalidInput("mode-sum output spans must match the grid length");
    for (size_t i = 0; i < t.size(); ++i) {
        cplx acc0 = sum.offset[0], acc1 = sum.offset[1], acc2 = sum.offset[2];
        for (int n = 0; n < 3; ++n) {
            const cplx e = std::exp(sum.lambda[n] * t[i]);
            acc0 += sum.weight[0][n] * e;
            acc1 += sum.weight[1][n] * e;
            acc2 += sum.weight[2][n] * e;
        }
        a2[i] = acc0;
        a3[i] = acc1;
        a4[i] = acc2;
    }
}

void eval_mode_sum(const ModeSum& sum, std::span<const double> t,
                   std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4,
                   Backend backend) {
    if (backend == Backend::avx2 && backend_available(Backend::avx2))
        eval_mode_sum_avx2(sum, t, a2, a3, a4);
    else
        eval_mode_sum_scalar(sum, t, a2, a3, a4);
}

}  // namespace eit4::kernels
