// AVX2 lane of the mode-sum trace kernel. Compiled with -mavx2 -mfma on
// x86-64 (see CMakeLists); entered only after the runtime cpuid check in
// mode_sum.cpp. On other architectures the entry points throw.

#include "eit4/kernels/mode_sum.hpp"

namespace eit4::kernels::detail {
bool cpu_has_avx2();  // defined in mode_sum.cpp (plain-ISA translation unit)
}

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace eit4::kernels {

namespace {

// ---------------------------------------------------------------------------
// Cephes-style exp and sincos on 4 packed doubles.
// ---------------------------------------------------------------------------

inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    const __m256d underflow = _mm256_set1_pd(-708.396418532264106224);
    const __m256d overflow = _mm256_set1_pd(709.4);

    const __m256d xin = x;
    x = _mm256_min_pd(_mm256_max_pd(x, underflow), overflow);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(n, c1, x);
    x = _mm256_fnmadd_pd(n, c2, x);

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d px = _mm256_fmadd_pd(p0, xx, p1);
    px = _mm256_fmadd_pd(px, xx, p2);
    px = _mm256_mul_pd(px, x);
    __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
    qx = _mm256_fmadd_pd(qx, xx, q2);
    qx = _mm256_fmadd_pd(qx, xx, q3);

    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // scale by 2^n
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

    e = _mm256_blendv_pd(e, _mm256_setzero_pd(),
                         _mm256_cmp_pd(xin, underflow, _CMP_LT_OQ));
    e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL),
                         _mm256_cmp_pd(xin, overflow, _CMP_GT_OQ));
    return e;
}

inline void sincos_pd(__m256d x, __m256d* out_sin, __m256d* out_cos) {
    const __m256d four_over_pi = _mm256_set1_pd(1.27323954473516268615);
    const __m256d dp1 = _mm256_set1_pd(7.85398125648498535156e-1);
    const __m256d dp2 = _mm256_set1_pd(3.77489470793079817668e-8);
    const __m256d dp3 = _mm256_set1_pd(2.69515142907905952645e-15);

    const __m256d s0 = _mm256_set1_pd(1.58962301576546568060e-10);
    const __m256d s1 = _mm256_set1_pd(-2.50507477628578072866e-8);
    const __m256d s2 = _mm256_set1_pd(2.75573136213857245213e-6);
    const __m256d s3 = _mm256_set1_pd(-1.98412698295895385996e-4);
    const __m256d s4 = _mm256_set1_pd(8.33333333332211858878e-3);
    const __m256d s5 = _mm256_set1_pd(-1.66666666666666307295e-1);

    const __m256d k0 = _mm256_set1_pd(-1.13585365213876817300e-11);
    const __m256d k1 = _mm256_set1_pd(2.08757008419747316778e-9);
    const __m256d k2 = _mm256_set1_pd(-2.75573141792967388112e-7);
    const __m256d k3 = _mm256_set1_pd(2.48015872888517179954e-5);
    const __m256d k4 = _mm256_set1_pd(-1.38888888888730564116e-3);
    const __m256d k5 = _mm256_set1_pd(4.16666666666665929218e-2);

    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sin_in_sign = _mm256_and_pd(x, sign_mask);
    const __m256d a = _mm256_andnot_pd(sign_mask, x);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(a, four_over_pi));
    __m128i j = _mm256_cvttpd_epi32(y);

    // force j even
    const __m128i odd = _mm_and_si128(j, _mm_set1_epi32(1));
    j = _mm_add_epi32(j, odd);
    y = _mm256_add_pd(y, _mm256_cvtepi32_pd(odd));
    j = _mm_and_si128(j, _mm_set1_epi32(7));

    const __m128i gt3 = _mm_cmpgt_epi32(j, _mm_set1_epi32(3));
    j = _mm_sub_epi32(j, _mm_and_si128(gt3, _mm_set1_epi32(4)));
    const __m128i gt1 = _mm_cmpgt_epi32(j, _mm_set1_epi32(1));
    const __m128i swap = _mm_or_si128(_mm_cmpeq_epi32(j, _mm_set1_epi32(1)),
                                      _mm_cmpeq_epi32(j, _mm_set1_epi32(2)));

    const __m256d m_gt3 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(gt3));
    const __m256d m_gt1 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(gt1));
    const __m256d m_swap = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(swap));

    // extended-precision argument reduction
    __m256d z = _mm256_fnmadd_pd(y, dp1, a);
    z = _mm256_fnmadd_pd(y, dp2, z);
    z = _mm256_fnmadd_pd(y, dp3, z);
    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d ps = _mm256_fmadd_pd(s0, zz, s1);
    ps = _mm256_fmadd_pd(ps, zz, s2);
    ps = _mm256_fmadd_pd(ps, zz, s3);
    ps = _mm256_fmadd_pd(ps, zz, s4);
    ps = _mm256_fmadd_pd(ps, zz, s5);
    ps = _mm256_fmadd_pd(_mm256_mul_pd(ps, zz), z, z);   // z + z*zz*poly

    __m256d pc = _mm256_fmadd_pd(k0, zz, k1);
    pc = _mm256_fmadd_pd(pc, zz, k2);
    pc = _mm256_fmadd_pd(pc, zz, k3);
    pc = _mm256_fmadd_pd(pc, zz, k4);
    pc = _mm256_fmadd_pd(pc, zz, k5);
    pc = _mm256_mul_pd(pc, _mm256_mul_pd(zz, zz));
    pc = _mm256_add_pd(pc, _mm256_fnmadd_pd(zz, _mm256_set1_pd(0.5),
                                            _mm256_set1_pd(1.0)));

    const __m256d sin_sign =
        _mm256_xor_pd(sin_in_sign, _mm256_and_pd(m_gt3, sign_mask));
    const __m256d cos_sign =
        _mm256_and_pd(_mm256_xor_pd(m_gt3, m_gt1), sign_mask);

    *out_sin = _mm256_xor_pd(_mm256_blendv_pd(ps, pc, m_swap), sin_sign);
    *out_cos = _mm256_xor_pd(_mm256_blendv_pd(pc, ps, m_swap), cos_sign);
}

inline void store_interleaved(cplx* dst, __m256d re, __m256d im) {
    const __m256d lo = _mm256_unpacklo_pd(re, im);   // re0 im0 re2 im2
    const __m256d hi = _mm256_unpackhi_pd(re, im);   // re1 im1 re3 im3
    double* p = reinterpret_cast<double*>(dst);
    _mm256_storeu_pd(p, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(p + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

}  // namespace

void eval_mode_sum_avx2(const ModeSum& sum, std::span<const double> t,
                        std::span<cplx> a2, std::span<cplx> a3, std::span<cplx> a4) {
    if (!detail::cpu_has_avx2())
        throw InvalidInput("AVX2 kernel requested on a CPU without AVX2+FMA");
    if (a2.size() != t.size() || a3.size() != t.size() || a4.size() != t.size())
        throw InvalidInput("mode-sum output spans must match the grid length");

    cplx* outs[3] = {a2.data(), a3.data(), a4.data()};

    size_t i = 0;
    for (; i + 4 <= t.size(); i += 4) {
        const __m256d tv = _mm256_loadu_pd(t.data() + i);
        __m256d acc_re[3], acc_im[3];
        for (int c = 0; c < 3; ++c) {
            acc_re[c] = _mm256_set1_pd(sum.offset[c].real());
            acc_im[c] = _mm256_set1_pd(sum.offset[c].imag());
        }
        for (int n = 0; n < 3; ++n) {
            const __m256d xr = _mm256_mul_pd(tv, _mm256_set1_pd(sum.lambda[n].real()));
            const __m256d xi = _mm256_mul_pd(tv, _mm256_set1_pd(sum.lambda[n].imag()));
            const __m256d er = exp_pd(xr);
            __m256d s, c;
            sincos_pd(xi, &s, &c);
            const __m256d ere = _mm256_mul_pd(er, c);
            const __m256d eim = _mm256_mul_pd(er, s);
            for (int comp = 0; comp < 3; ++comp) {
                const __m256d wr = _mm256_set1_pd(sum.weight[comp][n].real());
                const __m256d wi = _mm256_set1_pd(sum.weight[comp][n].imag());
                acc_re[comp] = _mm256_fmadd_pd(wr, ere,
                                    _mm256_fnmadd_pd(wi, eim, acc_re[comp]));
                acc_im[comp] = _mm256_fmadd_pd(wr, eim,
                                    _mm256_fmadd_pd(wi, ere, acc_im[comp]));
            }
        }
        for (int comp = 0; comp < 3; ++comp)
            store_interleaved(outs[comp] + i, acc_re[comp], acc_im[comp]);
    }

    if (i < t.size()) {
        const size_t rest = t.size() - i;
        eval_mode_sum_scalar(sum, t.subspan(i, rest), a2.subspan(i, rest),
                             a3.subspan(i, rest), a4.subspan(i, rest));
    }
}

void avx2_exp4(const double in[4], double out[4]) {
    if (!detail::cpu_has_avx2())
        throw InvalidInput("AVX2 unavailable");
    _mm256_storeu_pd(out, exp_pd(_mm256_loadu_pd(in)));
}

void avx2_sincos4(const double in[4], double s[4], double c[4]) {
    if (!detail::cpu_has_avx2())
        throw InvalidInput("AVX2 unavailable");
    __m256d sv, cv;
    sincos_pd(_mm256_loadu_pd(in), &sv, &cv);
    _mm256_storeu_pd(s, sv);
    _mm256_storeu_pd(c, cv);
}

}  // namespace eit4::kernels

#else  // non-AVX2 build: entry points exist but refuse to run

namespace eit4::kernels {

void eval_mode_sum_avx2(const ModeSum&, std::span<const double>, std::span<cplx>,
                        std::span<cplx>, std::span<cplx>) {
    throw InvalidInput("AVX2 kernel not built for this architecture");
}

void avx2_exp4(const double[4], double[4]) {
    throw InvalidInput("AVX2 kernel not built for this architecture");
}

void avx2_sincos4(const double[4], double[4], double[4]) {
    throw InvalidInput("AVX2 kernel not built for this architecture");
}

}  // namespace eit4::kernels

#endif
