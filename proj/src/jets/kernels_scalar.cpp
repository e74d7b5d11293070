#include "wsm/jets/kernels.hpp"

namespace wsm::jets::kern {

namespace {

void mul_scalar(const layout& lay, const double* a, const double* b, double* out) {
    const std::int32_t* pa = lay.pa.data();
    const std::int32_t* qa = lay.qa.data();
    for (int r = 0; r < lay.size(); ++r) {
        double lane[4] = {0.0, 0.0, 0.0, 0.0};
        const std::int32_t begin = lay.seg[r], end = lay.seg[r + 1];
        for (std::int32_t i = begin; i < end; ++i)
            lane[(i - begin) & 3] += a[pa[i]] * b[qa[i]];
        out[r] = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    }
}

void add_scalar(std::size_t n, const double* a, const double* b, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_scalar(std::size_t n, const double* a, const double* b, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_scalar(std::size_t n, const double* a, double s, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

} // namespace

const backend& scalar_backend() {
    static const backend b{"scalar", mul_scalar, add_scalar, sub_scalar, scale_scalar};
    return b;
}

} // namespace wsm::jets::kern
