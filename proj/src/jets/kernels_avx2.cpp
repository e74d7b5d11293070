#if defined(WSM_HAVE_AVX2_BUILD)

#include <immintrin.h>

#include "wsm/jets/kernels.hpp"

// Translation unit compiled with -mavx2; callers reach it only through the
// dispatch table after the cpuid check.

namespace wsm::jets::kern {

namespace {

void mul_avx2(const layout& lay, const double* a, const double* b, double* out) {
    const std::int32_t* pa = lay.pa.data();
    const std::int32_t* qa = lay.qa.data();
    for (int r = 0; r < lay.size(); ++r) {
        const std::int32_t begin = lay.seg[r], end = lay.seg[r + 1];
        const std::int32_t n = end - begin;
        __m256d acc = _mm256_setzero_pd();
        std::int32_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m128i ip = _mm_loadu_si128(reinterpret_cast<const __m128i*>(pa + begin + i));
            __m128i iq = _mm_loadu_si128(reinterpret_cast<const __m128i*>(qa + begin + i));
            __m256d va = _mm256_i32gather_pd(a, ip, 8);
            __m256d vb = _mm256_i32gather_pd(b, iq, 8);
            // mul+add kept separate: contraction to FMA would break the
            // bit-equality contract with the scalar kernel.
            acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
        }
        alignas(32) double lane[4];
        _mm256_store_pd(lane, acc);
        for (; i < n; ++i) lane[i & 3] += a[pa[begin + i]] * b[qa[begin + i]];
        out[r] = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    }
}

void add_avx2(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_avx2(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_avx2(std::size_t n, const double* a, double s, double* out) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    for (; i < n; ++i) out[i] = a[i] * s;
}

} // namespace

const backend& avx2_backend() {
    static const backend b{"avx2", mul_avx2, add_avx2, sub_avx2, scale_avx2};
    return b;
}

} // namespace wsm::jets::kern

#endif // WSM_HAVE_AVX2_BUILD
