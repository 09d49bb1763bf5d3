#include <cmath>
#include <cstddef>
#include <cstdint>

#include "backends.hpp"

namespace volforms::kernels {

PhiloxBlock philox4x32_10(PhiloxBlock c, PhiloxKey k) {
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(M0) * c.x0;
        const std::uint64_t p1 = std::uint64_t(M1) * c.x2;
        const PhiloxBlock next{std::uint32_t(p1 >> 32) ^ c.x1 ^ k.k0,
                               std::uint32_t(p1),
                               std::uint32_t(p0 >> 32) ^ c.x3 ^ k.k1,
                               std::uint32_t(p0)};
        c = next;
        k.k0 += W0;
        k.k1 += W1;
    }
    return c;
}

// AS 241 PPND16. Tail coefficients for sqrt(-log p) in (1.6, 5] and (5, inf).
double normal_from_u01(double p) {
    using detail::kPpndA;
    using detail::kPpndB;
    static constexpr double C[8] = {
        1.42343711074968357734e0,  4.63033784615654529590e0,
        5.76949722146069140550e0,  3.64784832476320460504e0,
        1.27045825245236838258e0,  2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double D[8] = {
        1.0,                       2.05319162663775882187e0,
        1.67638483018380384940e0,  6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double E[8] = {
        6.65790464350110377720e0,  5.46378491116411436990e0,
        1.78482653991729133580e0,  2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double F[8] = {
        1.0,                       5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        double num = kPpndA[7];
        for (int i = 6; i >= 0; --i) num = num * r + kPpndA[i];
        double den = kPpndB[7];
        for (int i = 6; i >= 0; --i) den = den * r + kPpndB[i];
        return (q * num) / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        double num = C[7];
        for (int i = 6; i >= 0; --i) num = num * r + C[i];
        double den = D[7];
        for (int i = 6; i >= 0; --i) den = den * r + D[i];
        z = num / den;
    } else {
        r -= 5.0;
        double num = E[7];
        for (int i = 6; i >= 0; --i) num = num * r + E[i];
        double den = F[7];
        for (int i = 6; i >= 0; --i) den = den * r + F[i];
        z = num / den;
    }
    return (q < 0.0) ? -z : z;
}

namespace detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    const std::size_t m = n - n % 4;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < m; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double acc = (s0 + s2) + (s1 + s3);
    for (std::size_t i = m; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot_increments_scalar(const double* cell, const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < m; i += 4) {
        s0 += cell[i] * (nodes[i + 1] - nodes[i]);
        s1 += cell[i + 1] * (nodes[i + 2] - nodes[i + 1]);
        s2 += cell[i + 2] * (nodes[i + 3] - nodes[i + 2]);
        s3 += cell[i + 3] * (nodes[i + 4] - nodes[i + 3]);
    }
    double acc = (s0 + s2) + (s1 + s3);
    for (std::size_t i = m; i < n; ++i) acc += cell[i] * (nodes[i + 1] - nodes[i]);
    return acc;
}

double sum_sq_increments_scalar(const double* nodes, std::size_t n) {
    const std::size_t m = n - n % 4;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < m; i += 4) {
        const double d0 = nodes[i + 1] - nodes[i];
        const double d1 = nodes[i + 2] - nodes[i + 1];
        const double d2 = nodes[i + 3] - nodes[i + 2];
        const double d3 = nodes[i + 4] - nodes[i + 3];
        s0 += d0 * d0;
        s1 += d1 * d1;
        s2 += d2 * d2;
        s3 += d3 * d3;
    }
    double acc = (s0 + s2) + (s1 + s3);
    for (std::size_t i = m; i < n; ++i) {
        const double d = nodes[i + 1] - nodes[i];
        acc += d * d;
    }
    return acc;
}

void add_scaled_scalar(double* dst, const double* x, double c, const double* y,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] + c * y[i];
}

void fill_u01_scalar(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
                     std::uint64_t start_block, double* out, std::size_t n) {
    std::uint64_t block = start_block;
    std::size_t i = 0;
    while (i < n) {
        const PhiloxBlock ctr{std::uint32_t(block), std::uint32_t(block >> 32),
                              draw, stream};
        const PhiloxBlock r = philox4x32_10(ctr, key);
        const std::uint64_t ua = (std::uint64_t(r.x1) << 32) | r.x0;
        const std::uint64_t ub = (std::uint64_t(r.x3) << 32) | r.x2;
        out[i++] = u01_from_u64(ua);
        if (i < n) out[i++] = u01_from_u64(ub);
        ++block;
    }
}

void normals_from_u01_scalar(const double* u, double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = normal_from_u01(u[i]);
}

} // namespace

const Vtable& scalar_vtable() {
    static const Vtable vt{dot_scalar,        dot_increments_scalar,
                           sum_sq_increments_scalar, add_scaled_scalar,
                           fill_u01_scalar,   normals_from_u01_scalar};
    return vt;
}

} // namespace detail
} // namespace volforms::kernels
