#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "volforms/kernels/kernels.hpp"

namespace volforms {

/// A deterministic, partitionable random stream. Streams with distinct
/// stream_index under the same seed are independent: the index is part of
/// the Philox counter, never the key.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint32_t stream_index = 0;
};

/// The variates of one Monte Carlo draw: a pure function of
/// (seed, stream_index, draw_index). Every call starts at a fresh counter
/// block, so the sequence of values depends only on the sequence of call
/// sizes, not on how callers batch them.
class DrawRng {
  public:
    DrawRng(RngStream stream, std::uint32_t draw_index)
        : key_{std::uint32_t(stream.seed), std::uint32_t(stream.seed >> 32)},
          draw_(draw_index),
          stream_(stream.stream_index) {}

    void fill_normals(std::span<double> out) {
        kernels::fill_normals(key_, draw_, stream_, next_block_, out);
        next_block_ += (out.size() + 1) / 2;
    }

    void fill_u01(std::span<double> out) {
        kernels::fill_u01(key_, draw_, stream_, next_block_, out);
        next_block_ += (out.size() + 1) / 2;
    }

    double normal() {
        double z;
        fill_normals({&z, 1});
        return z;
    }

    double uniform() {
        double u;
        fill_u01({&u, 1});
        return u;
    }

  private:
    kernels::PhiloxKey key_;
    std::uint32_t draw_;
    std::uint32_t stream_;
    std::uint64_t next_block_ = 0;
};

/// Sample mean with standard error. `sum` and `sum_sq` are carried so that
/// estimates combine exactly; the contract fields are the first three.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

McEstimate mc_from_sums(double sum, double sum_sq, std::int64_t n);

/// Pooled estimate; associative on the mean for equal sample counts.
McEstimate combine(const McEstimate& a, const McEstimate& b);

using Sampler = std::function<double(DrawRng&)>;

/// Mean and standard error of `sampler` over n independent draws. Draw i is
/// a pure function of (stream, i); the canonical partition assigns workers
/// contiguous index ranges and combines their partial sums in worker order,
/// so results are bit-reproducible for a fixed (stream, n, n_workers) and
/// the set of draws does not depend on n_workers at all.
McEstimate estimate(const Sampler& sampler, std::int64_t n, RngStream stream,
                    int n_workers = 1);

using VecSampler = std::function<void(DrawRng&, std::span<double>)>;

/// Several statistics from common draws: the sampler fills `dim` outputs per
/// draw and each component is averaged separately. Same determinism and
/// partition rules as `estimate`.
std::vector<McEstimate> estimate_vec(const VecSampler& sampler, int dim,
                                     std::int64_t n, RngStream stream,
                                     int n_workers = 1);

} // namespace volforms
