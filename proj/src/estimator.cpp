#include "volforms/estimator.hpp"

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "volforms/error.hpp"

namespace volforms {

McEstimate mc_from_sums(double sum, double sum_sq, std::int64_t n) {
    McEstimate e;
    e.n_samples = n;
    e.sum = sum;
    e.sum_sq = sum_sq;
    e.mean = sum / double(n);
    if (n > 1) {
        const double var = (sum_sq - sum * e.mean) / double(n - 1);
        e.std_error = std::sqrt(std::max(0.0, var) / double(n));
    }
    return e;
}

McEstimate combine(const McEstimate& a, const McEstimate& b) {
    return mc_from_sums(a.sum + b.sum, a.sum_sq + b.sum_sq, a.n_samples + b.n_samples);
}

namespace {

struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t bad_draw = -1; // first non-finite draw index, if any
};

Partial run_range(const Sampler& sampler, RngStream stream, std::int64_t lo,
                  std::int64_t hi) {
    Partial p;
    for (std::int64_t i = lo; i < hi; ++i) {
        DrawRng rng(stream, std::uint32_t(i));
        const double x = sampler(rng);
        if (!std::isfinite(x)) {
            p.bad_draw = i;
            return p;
        }
        p.sum += x;
        p.sum_sq += x * x;
    }
    return p;
}

} // namespace

McEstimate estimate(const Sampler& sampler, std::int64_t n, RngStream stream,
                    int n_workers) {
    if (n < 2) throw Error("estimate: need n >= 2 samples");
    if (n_workers < 1) throw Error("estimate: need n_workers >= 1");
    if (n > (std::int64_t(1) << 32))
        throw Error("estimate: draw index exceeds the 32-bit counter field");

    std::vector<Partial> parts(static_cast<std::size_t>(n_workers));
    if (n_workers == 1) {
        parts[0] = run_range(sampler, stream, 0, n);
    } else {
        const std::int64_t chunk = (n + n_workers - 1) / n_workers;
        std::vector<std::thread> threads;
        threads.reserve(std::size_t(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            const std::int64_t lo = std::min<std::int64_t>(n, w * chunk);
            const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
            threads.emplace_back([&, w, lo, hi] {
                parts[std::size_t(w)] = run_range(sampler, stream, lo, hi);
            });
        }
        for (auto& t : threads) t.join();
    }

    double sum = 0.0, sum_sq = 0.0;
    for (const Partial& p : parts) {
        if (p.bad_draw >= 0)
            throw Error("estimate: non-finite sample at draw index " +
                        std::to_string(p.bad_draw));
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    return mc_from_sums(sum, sum_sq, n);
}

namespace {

struct VecPartial {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::int64_t bad_draw = -1;
};

VecPartial run_range_vec(const VecSampler& sampler, int dim, RngStream stream,
                         std::int64_t lo, std::int64_t hi) {
    VecPartial p;
    p.sum.assign(std::size_t(dim), 0.0);
    p.sum_sq.assign(std::size_t(dim), 0.0);
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (std::int64_t i = lo; i < hi; ++i) {
        DrawRng rng(stream, std::uint32_t(i));
        sampler(rng, x);
        for (int d = 0; d < dim; ++d) {
            if (!std::isfinite(x[std::size_t(d)])) {
                p.bad_draw = i;
                return p;
            }
            p.sum[std::size_t(d)] += x[std::size_t(d)];
            p.sum_sq[std::size_t(d)] += x[std::size_t(d)] * x[std::size_t(d)];
        }
    }
    return p;
}

} // namespace

std::vector<McEstimate> estimate_vec(const VecSampler& sampler, int dim,
                                     std::int64_t n, RngStream stream,
                                     int n_workers) {
    if (n < 2) throw Error("estimate_vec: need n >= 2 samples");
    if (dim < 1) throw Error("estimate_vec: need dim >= 1");
    if (n_workers < 1) throw Error("estimate_vec: need n_workers >= 1");

    std::vector<VecPartial> parts(static_cast<std::size_t>(n_workers));
    if (n_workers == 1) {
        parts[0] = run_range_vec(sampler, dim, stream, 0, n);
    } else {
        const std::int64_t chunk = (n + n_workers - 1) / n_workers;
        std::vector<std::thread> threads;
        threads.reserve(std::size_t(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            const std::int64_t lo = std::min<std::int64_t>(n, w * chunk);
            const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
            threads.emplace_back([&, w, lo, hi] {
                parts[std::size_t(w)] = run_range_vec(sampler, dim, stream, lo, hi);
            });
        }
        for (auto& t : threads) t.join();
    }

    std::vector<McEstimate> out;
    out.reserve(std::size_t(dim));
    for (int d = 0; d < dim; ++d) {
        double sum = 0.0, sum_sq = 0.0;
        for (const VecPartial& p : parts) {
            if (p.bad_draw >= 0)
                throw Error("estimate_vec: non-finite sample at draw index " +
                            std::to_string(p.bad_draw));
            sum += p.sum[std::size_t(d)];
            sum_sq += p.sum_sq[std::size_t(d)];
        }
        out.push_back(mc_from_sums(sum, sum_sq, n));
    }
    return out;
}

} // namespace volforms
