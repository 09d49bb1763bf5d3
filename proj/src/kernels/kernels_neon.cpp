// NEON variants (aarch64). Two float64x2 accumulators mirror the canonical
// 4-lane decomposition: va holds (s0, s1), vb holds (s2, s3). Philox and the
// normal transform fall back to the scalar reference on this platform.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>

#include "backends.hpp"

namespace volforms::kernels::detail {
namespace {

inline double hsum_canonical(float64x2_t va, float64x2_t vb) {
    const float64x2_t s = vaddq_f64(va, vb); // [s0+s2, s1+s3]
    return vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    const std::size_t m = n - n % 4;
    float64x2_t va = vdupq_n_f64(0.0);
    float64x2_t vb = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < m; i += 4) {
        va = vaddq_f64(va, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        vb = vaddq_f64(vb, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double out = hsum_canonical(va, vb);
    for (std::size_t i = m; i < n; ++i) out += a[i] * b[i];
    return out;
}

double dot_increments_neon(const double* cell, const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    float64x2_t va = vdupq_n_f64(0.0);
    float64x2_t vb = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < m; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(nodes + i + 1), vld1q_f64(nodes + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(nodes + i + 3), vld1q_f64(nodes + i + 2));
        va = vaddq_f64(va, vmulq_f64(vld1q_f64(cell + i), d0));
        vb = vaddq_f64(vb, vmulq_f64(vld1q_f64(cell + i + 2), d1));
    }
    double out = hsum_canonical(va, vb);
    for (std::size_t i = m; i < n; ++i) out += cell[i] * (nodes[i + 1] - nodes[i]);
    return out;
}

double sum_sq_increments_neon(const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    float64x2_t va = vdupq_n_f64(0.0);
    float64x2_t vb = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < m; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(nodes + i + 1), vld1q_f64(nodes + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(nodes + i + 3), vld1q_f64(nodes + i + 2));
        va = vaddq_f64(va, vmulq_f64(d0, d0));
        vb = vaddq_f64(vb, vmulq_f64(d1, d1));
    }
    double out = hsum_canonical(va, vb);
    for (std::size_t i = m; i < n; ++i) {
        const double d = nodes[i + 1] - nodes[i];
        out += d * d;
    }
    return out;
}

void add_scaled_neon(double* dst, const double* x, double c, const double* y,
                     std::size_t n) {
    const std::size_t m = n - n % 2;
    const float64x2_t vc = vdupq_n_f64(c);
    for (std::size_t i = 0; i < m; i += 2)
        vst1q_f64(dst + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(vc, vld1q_f64(y + i))));
    for (std::size_t i = m; i < n; ++i) dst[i] = x[i] + c * y[i];
}

} // namespace

const Vtable& neon_vtable() {
    static const Vtable vt{dot_neon,
                           dot_increments_neon,
                           sum_sq_increments_neon,
                           add_scaled_neon,
                           scalar_vtable().fill_u01,
                           scalar_vtable().normals_from_u01};
    return vt;
}

} // namespace volforms::kernels::detail

#endif // __aarch64__
