#pragma once

// Private per-backend entry points. Each TU implements one backend; the
// dispatcher in kernels.cpp wires them up at startup.

#include <cstddef>
#include <cstdint>

#include "volforms/kernels/kernels.hpp"

namespace volforms::kernels::detail {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*dot_increments)(const double*, const double*, std::size_t);
    double (*sum_sq_increments)(const double*, std::size_t);
    void (*add_scaled)(double*, const double*, double, const double*, std::size_t);
    void (*fill_u01)(PhiloxKey, std::uint32_t, std::uint32_t, std::uint64_t,
                     double*, std::size_t);
    void (*normals_from_u01)(const double*, double*, std::size_t);
};

const Vtable& scalar_vtable();

#if defined(__x86_64__) || defined(_M_X64)
const Vtable& avx2_vtable();
#endif

#if defined(__aarch64__)
const Vtable& neon_vtable();
#endif

// Shared helpers (header-only so all backends agree exactly).

inline double u01_from_u64(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// AS 241 rational-polynomial coefficients, central region |p - 0.5| <= 0.425.
inline constexpr double kPpndA[8] = {
    3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
    1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
    3.3430575583588128105e4,  2.5090809287301226727e3};
inline constexpr double kPpndB[8] = {
    1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
    5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
    2.8729085735721942674e4,  5.2264952788528545610e3};

} // namespace volforms::kernels::detail
