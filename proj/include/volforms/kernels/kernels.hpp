#pragma once

#include <cstdint>
#include <span>

namespace volforms::kernels {

// Data-parallel inner loops used by the Monte Carlo drivers. Every kernel has
// a scalar reference implementation and, where the hardware supports it, a
// SIMD variant selected at runtime. All variants of one kernel are
// bit-identical by construction: they execute the same IEEE-754 operation
// sequence per element, and reductions use a fixed 4-lane decomposition.
//
// Canonical reduction order (n elements, m = n - n % 4):
//   s_j = sum of terms with index == j (mod 4), i < m, accumulated in
//         ascending index order (j = 0..3)
//   acc = (s_0 + s_2) + (s_1 + s_3)
//   acc += term_i for i in [m, n) in ascending order
enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b); // throws Error if unavailable on this host
const char* backend_name(Backend b);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

/// sum_i cell[i] * (nodes[i+1] - nodes[i]); cell.size() + 1 == nodes.size()
double dot_increments(std::span<const double> cell, std::span<const double> nodes);

/// sum_i (nodes[i+1] - nodes[i])^2
double sum_sq_increments(std::span<const double> nodes);

/// dst[i] = x[i] + c * y[i]; dst may alias x
void add_scaled(std::span<double> dst, std::span<const double> x, double c,
                std::span<const double> y);

// ---- counter-based random streams (Philox4x32-10) -------------------------

struct PhiloxKey {
    std::uint32_t k0;
    std::uint32_t k1;
};

struct PhiloxBlock {
    std::uint32_t x0;
    std::uint32_t x1;
    std::uint32_t x2;
    std::uint32_t x3;
};

/// One Philox4x32-10 block; scalar reference, exposed for known-answer tests.
PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key);

/// Fill `out` with uniforms in the open interval (0,1). Counter layout per
/// block b: (lo32(b), hi32(b), draw, stream); each block yields two doubles,
/// first from words (x1,x0), then from (x3,x2), via (u64 >> 11)*2^-53 + 2^-54.
void fill_u01(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
              std::uint64_t start_block, std::span<double> out);

/// Standard normal quantile (Wichura's AS 241, double precision).
/// Strictly requires p in (0,1).
double normal_from_u01(double p);

/// z[i] = normal_from_u01(u[i])
void normals_from_u01(std::span<const double> u, std::span<double> z);

/// fill_u01 followed by normals_from_u01, in one pass.
void fill_normals(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
                  std::uint64_t start_block, std::span<double> out);

} // namespace volforms::kernels
