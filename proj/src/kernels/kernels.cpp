#include "volforms/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "backends.hpp"
#include "volforms/error.hpp"

namespace volforms::kernels {

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("VOLFORMS_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) return Backend::avx2;
        if (std::strcmp(env, "neon") == 0) return Backend::neon;
        throw Error(std::string("VOLFORMS_KERNELS: unknown backend '") + env +
                    "' (expected scalar, avx2 or neon)");
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#elif defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

std::atomic<const detail::Vtable*> g_vtable{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::Vtable* vtable_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &detail::scalar_vtable();
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (__builtin_cpu_supports("avx2")) return &detail::avx2_vtable();
#endif
            return nullptr;
        case Backend::neon:
#if defined(__aarch64__)
            return &detail::neon_vtable();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const detail::Vtable& vt() {
    const detail::Vtable* p = g_vtable.load(std::memory_order_acquire);
    if (!p) {
        const Backend b = detect_backend();
        p = vtable_for(b);
        if (!p) throw Error(std::string("kernel backend unavailable on this host: ") + backend_name(b));
        g_backend.store(b, std::memory_order_relaxed);
        g_vtable.store(p, std::memory_order_release);
    }
    return *p;
}

} // namespace

Backend active_backend() {
    vt();
    return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) { return vtable_for(b) != nullptr; }

void set_backend(Backend b) {
    const detail::Vtable* p = vtable_for(b);
    if (!p) throw Error(std::string("kernel backend unavailable on this host: ") + backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
    g_vtable.store(p, std::memory_order_release);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("kernels::dot: size mismatch");
    return vt().dot(a.data(), b.data(), a.size());
}

double dot_increments(std::span<const double> cell, std::span<const double> nodes) {
    if (cell.size() + 1 != nodes.size())
        throw Error("kernels::dot_increments: need one node per cell boundary");
    return vt().dot_increments(cell.data(), nodes.data(), cell.size());
}

double sum_sq_increments(std::span<const double> nodes) {
    if (nodes.empty()) throw Error("kernels::sum_sq_increments: empty input");
    return vt().sum_sq_increments(nodes.data(), nodes.size() - 1);
}

void add_scaled(std::span<double> dst, std::span<const double> x, double c,
                std::span<const double> y) {
    if (dst.size() != x.size() || x.size() != y.size())
        throw Error("kernels::add_scaled: size mismatch");
    vt().add_scaled(dst.data(), x.data(), c, y.data(), dst.size());
}

void fill_u01(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
              std::uint64_t start_block, std::span<double> out) {
    vt().fill_u01(key, draw, stream, start_block, out.data(), out.size());
}

void normals_from_u01(std::span<const double> u, std::span<double> z) {
    if (u.size() != z.size()) throw Error("kernels::normals_from_u01: size mismatch");
    vt().normals_from_u01(u.data(), z.data(), u.size());
}

void fill_normals(PhiloxKey key, std::uint32_t draw, std::uint32_t stream,
                  std::uint64_t start_block, std::span<double> out) {
    const detail::Vtable& v = vt();
    v.fill_u01(key, draw, stream, start_block, out.data(), out.size());
    v.normals_from_u01(out.data(), out.data(), out.size());
}

} // namespace volforms::kernels
