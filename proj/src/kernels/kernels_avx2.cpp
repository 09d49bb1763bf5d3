// AVX2 variants. Bit-identical to the scalar reference: same per-element
// IEEE operation sequence, same 4-lane reduction decomposition, no FMA.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "backends.hpp"

namespace volforms::kernels::detail {
namespace {

inline double hsum_canonical(__m256d acc) {
    const __m128d lo = _mm256_castpd256_pd128(acc);  // [s0, s1]
    const __m128d hi = _mm256_extractf128_pd(acc, 1); // [s2, s3]
    const __m128d s = _mm_add_pd(lo, hi);             // [s0+s2, s1+s3]
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    const std::size_t m = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < m; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double out = hsum_canonical(acc);
    for (std::size_t i = m; i < n; ++i) out += a[i] * b[i];
    return out;
}

double dot_increments_avx2(const double* cell, const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < m; i += 4) {
        const __m256d w0 = _mm256_loadu_pd(nodes + i);
        const __m256d w1 = _mm256_loadu_pd(nodes + i + 1);
        const __m256d vc = _mm256_loadu_pd(cell + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vc, _mm256_sub_pd(w1, w0)));
    }
    double out = hsum_canonical(acc);
    for (std::size_t i = m; i < n; ++i) out += cell[i] * (nodes[i + 1] - nodes[i]);
    return out;
}

double sum_sq_increments_avx2(const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < m; i += 4) {
        const __m256d w0 = _mm256_loadu_pd(nodes + i);
        const __m256d w1 = _mm256_loadu_pd(nodes + i + 1);
        const __m256d d = _mm256_sub_pd(w1, w0);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double out = hsum_canonical(acc);
    for (std::size_t i = m; i < n; ++i) {
        const double d = nodes[i + 1] - nodes[i];
        out += d * d;
    }
    return out;
}

void add_scaled_avx2(double* dst, const double* x, double c, const double* y,
                     std::size_t n) {
    const std::size_t m = n - n % 4;
    const __m256d vc = _mm256_set1_pd(c);
    for (std::size_t i = 0; i < m; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(vx, _mm256_mul_pd(vc, vy)));
    }
    for (std::size_t i = m; i < n; ++i) dst[i] = x[i] + c * y[i];
}

// Four Philox blocks in struct-of-arrays form; values live in the low 32 bits
// of each 64-bit lane, upper halves kept zero.
void fill8_u01_avx2(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
                    std::uint64_t block, double* out) {
    const __m256i mask32 = _mm256_set1_epi64x(0xFFFFFFFFll);
    const __m256i M0 = _mm256_set1_epi64x(0xD2511F53ll);
    const __m256i M1 = _mm256_set1_epi64x(0xCD9E8D57ll);
    const __m256i W0 = _mm256_set1_epi64x(0x9E3779B9ll);
    const __m256i W1 = _mm256_set1_epi64x(0xBB67AE85ll);
    __m256i c0 = _mm256_and_si256(
        _mm256_setr_epi64x(static_cast<long long>(block),
                           static_cast<long long>(block + 1),
                           static_cast<long long>(block + 2),
                           static_cast<long long>(block + 3)),
        mask32);
    __m256i c1 = _mm256_setr_epi64x(static_cast<long long>(block >> 32),
                                    static_cast<long long>((block + 1) >> 32),
                                    static_cast<long long>((block + 2) >> 32),
                                    static_cast<long long>((block + 3) >> 32));
    __m256i c2 = _mm256_set1_epi64x(static_cast<long long>(draw));
    __m256i c3 = _mm256_set1_epi64x(static_cast<long long>(stream));
    __m256i k0 = _mm256_set1_epi64x(static_cast<long long>(key.k0));
    __m256i k1 = _mm256_set1_epi64x(static_cast<long long>(key.k1));
    for (int round = 0; round < 10; ++round) {
        const __m256i p0 = _mm256_mul_epu32(c0, M0);
        const __m256i p1 = _mm256_mul_epu32(c2, M1);
        const __m256i hi0 = _mm256_srli_epi64(p0, 32);
        const __m256i lo0 = _mm256_and_si256(p0, mask32);
        const __m256i hi1 = _mm256_srli_epi64(p1, 32);
        const __m256i lo1 = _mm256_and_si256(p1, mask32);
        const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
        const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
        c0 = n0;
        c1 = lo1;
        c2 = n2;
        c3 = lo0;
        k0 = _mm256_and_si256(_mm256_add_epi64(k0, W0), mask32);
        k1 = _mm256_and_si256(_mm256_add_epi64(k1, W1), mask32);
    }
    const __m256i ua = _mm256_or_si256(_mm256_slli_epi64(c1, 32), c0);
    const __m256i ub = _mm256_or_si256(_mm256_slli_epi64(c3, 32), c2);
    alignas(32) std::uint64_t a[4];
    alignas(32) std::uint64_t b[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(a), ua);
    _mm256_store_si256(reinterpret_cast<__m256i*>(b), ub);
    for (int lane = 0; lane < 4; ++lane) {
        out[2 * lane] = u01_from_u64(a[lane]);
        out[2 * lane + 1] = u01_from_u64(b[lane]);
    }
}

void fill_u01_avx2(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
                   std::uint64_t start_block, double* out, std::size_t n) {
    std::size_t i = 0;
    std::uint64_t block = start_block;
    for (; i + 8 <= n; i += 8, block += 4) fill8_u01_avx2(key, draw, stream, block, out + i);
    if (i < n) scalar_vtable().fill_u01(key, draw, stream, block, out + i, n - i);
}

void normals_from_u01_avx2(const double* u, double* z, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d thr = _mm256_set1_pd(0.425);
    const __m256d r0 = _mm256_set1_pd(0.180625);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_loadu_pd(u + i);
        const __m256d q = _mm256_sub_pd(p, half);
        const __m256d absq = _mm256_andnot_pd(sign, q);
        const int central = _mm256_movemask_pd(_mm256_cmp_pd(absq, thr, _CMP_LE_OQ));
        const __m256d r = _mm256_sub_pd(r0, _mm256_mul_pd(q, q));
        __m256d num = _mm256_set1_pd(kPpndA[7]);
        for (int j = 6; j >= 0; --j)
            num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(kPpndA[j]));
        __m256d den = _mm256_set1_pd(kPpndB[7]);
        for (int j = 6; j >= 0; --j)
            den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(kPpndB[j]));
        const __m256d zc = _mm256_div_pd(_mm256_mul_pd(q, num), den);
        if (central == 0xF) {
            _mm256_storeu_pd(z + i, zc);
        } else {
            alignas(32) double tmp[4];
            _mm256_store_pd(tmp, zc);
            for (int lane = 0; lane < 4; ++lane)
                if (!(central & (1 << lane)))
                    tmp[lane] = volforms::kernels::normal_from_u01(u[i + lane]);
            for (int lane = 0; lane < 4; ++lane) z[i + lane] = tmp[lane];
        }
    }
    for (; i < n; ++i) z[i] = volforms::kernels::normal_from_u01(u[i]);
}

} // namespace

const Vtable& avx2_vtable() {
    static const Vtable vt{dot_avx2,        dot_increments_avx2,
                           sum_sq_increments_avx2, add_scaled_avx2,
                           fill_u01_avx2,   normals_from_u01_avx2};
    return vt;
}

} // namespace volforms::kernels::detail

#endif // x86_64
