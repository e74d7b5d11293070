#if defined(WSM_HAVE_NEON_BUILD)

#include <arm_neon.h>

#include "wsm/jets/kernels.hpp"

namespace wsm::jets::kern {

namespace {

// Two float64x2_t accumulators model lanes 0-1 and 2-3 of the canonical
// 4-lane summation, so results are bit-identical to the scalar kernel.
void mul_neon(const layout& lay, const double* a, const double* b, double* out) {
    const std::int32_t* pa = lay.pa.data();
    const std::int32_t* qa = lay.qa.data();
    for (int r = 0; r < lay.size(); ++r) {
        const std::int32_t begin = lay.seg[r], end = lay.seg[r + 1];
        const std::int32_t n = end - begin;
        float64x2_t acc01 = vdupq_n_f64(0.0), acc23 = vdupq_n_f64(0.0);
        std::int32_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const std::int32_t base = begin + i;
            float64x2_t a01 = {a[pa[base]], a[pa[base + 1]]};
            float64x2_t b01 = {b[qa[base]], b[qa[base + 1]]};
            float64x2_t a23 = {a[pa[base + 2]], a[pa[base + 3]]};
            float64x2_t b23 = {b[qa[base + 2]], b[qa[base + 3]]};
            acc01 = vaddq_f64(acc01, vmulq_f64(a01, b01));
            acc23 = vaddq_f64(acc23, vmulq_f64(a23, b23));
        }
        double lane[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                          vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
        for (; i < n; ++i) lane[i & 3] += a[pa[begin + i]] * b[qa[begin + i]];
        out[r] = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    }
}

void add_neon(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_neon(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_neon(std::size_t n, const double* a, double s, double* out) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vs));
    for (; i < n; ++i) out[i] = a[i] * s;
}

} // namespace

const backend& neon_backend() {
    static const backend b{"neon", mul_neon, add_neon, sub_neon, scale_neon};
    return b;
}

} // namespace wsm::jets::kern

#endif // WSM_HAVE_NEON_BUILD
