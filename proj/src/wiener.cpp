#include "volforms/wiener.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "volforms/error.hpp"
#include "volforms/kernels/kernels.hpp"

namespace volforms {

namespace {

std::vector<double> values_at(const DiscretePath& w, std::span<const int> nodes) {
    std::vector<double> y(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
        y[j] = w.values[std::size_t(nodes[j])];
    return y;
}

double sup_norm(const DiscretePath& w) {
    double m = 0.0;
    for (double x : w.values) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

std::vector<int> cylinder_nodes(const CylinderFunctional& F, Grid grid) {
    if (F.times.empty()) throw Error("cylinder functional: no times declared");
    std::vector<int> nodes;
    nodes.reserve(F.times.size());
    double prev = 0.0;
    for (double t : F.times) {
        if (!(t > 0.0 && t <= 1.0))
            throw Error("cylinder functional: times must lie in (0,1]");
        if (t <= prev && !nodes.empty())
            throw Error("cylinder functional: times must be strictly increasing");
        nodes.push_back(node_index(grid, t));
        prev = t;
    }
    return nodes;
}

double gateaux(const CylinderFunctional& F, std::span<const int> nodes,
               const DiscretePath& w, const Shift& phi) {
    const auto y = values_at(w, nodes);
    std::vector<double> dir(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
        dir[j] = phi.values[std::size_t(nodes[j])];
    if (F.has_grad()) {
        const auto g = F.grad(y);
        if (g.size() != y.size()) throw Error("cylinder functional: gradient arity");
        double acc = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) acc += g[j] * dir[j];
        return acc;
    }
    const double eps =
        std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + sup_norm(w));
    std::vector<double> yp(y), ym(y);
    for (std::size_t j = 0; j < y.size(); ++j) {
        yp[j] = y[j] + eps * dir[j];
        ym[j] = y[j] - eps * dir[j];
    }
    return (F.f(yp) - F.f(ym)) / (2.0 * eps);
}

double cm_density(const Shift& phi, const DiscretePath& w) {
    const double norm_sq = inner_21(phi, phi);
    const double exponent = -0.5 * norm_sq + div_A(phi, w);
    if (exponent > 709.0)
        throw Error("cm_density: overflow, exponent = " + std::to_string(exponent));
    return std::exp(exponent);
}

VerificationReport verify_characteristic_functional(const DualMeasure& wp,
                                                    Grid grid,
                                                    std::int64_t n_samples,
                                                    RngStream stream,
                                                    const ReportConfig& cfg) {
    // validate atoms up front so failures name the atom, not a draw
    for (const auto& atom : wp.atoms) {
        if (!(atom.t > 0.0 && atom.t <= 1.0))
            throw Error("characteristic functional: atom outside (0,1]");
        node_index(grid, atom.t); // throws when off-grid; no interpolation
    }

    const auto est = estimate_vec(
        [&](DrawRng& rng, std::span<double> out) {
            const auto w = sample_brownian(grid, rng);
            const double x = pair_dual(wp, w);
            out[0] = std::cos(x);
            out[1] = -std::sin(x);
        },
        2, n_samples, stream);

    const double exact_re = std::exp(-0.5 * dual_kernel_quadratic(wp));
    auto re = check_against_exact("characteristic_functional.re", "a1", est[0],
                                  exact_re, cfg);
    auto im = check_against_exact("characteristic_functional.im", "a1", est[1],
                                  0.0, cfg);
    auto r = aggregate("characteristic_functional", "a1",
                       {std::move(re), std::move(im)});
    r.seed = stream.seed;
    r.grid_n = grid.n;
    return r;
}

VerificationReport verify_cameron_martin(const CylinderFunctional& F,
                                         const Shift& phi, Grid grid,
                                         std::int64_t n_samples, RngStream stream,
                                         const ReportConfig& cfg) {
    if (!(phi.grid == grid)) throw Error("verify_cameron_martin: grid mismatch");
    const auto nodes = cylinder_nodes(F, grid);
    const auto est = estimate_vec(
        [&](DrawRng& rng, std::span<double> out) {
            const auto w = sample_brownian(grid, rng);
            const auto wshift = shifted(w, phi);
            const double lhs = F.f(values_at(wshift, nodes));
            const double rhs = cm_density(phi, w) * F.f(values_at(w, nodes));
            out[0] = lhs;
            out[1] = rhs;
            out[2] = lhs - rhs;
        },
        3, n_samples, stream);
    auto r = check_paired("cameron_martin[" + F.label + "]", "a4", est[0], est[1],
                          est[2], cfg);
    r.seed = stream.seed;
    r.grid_n = grid.n;
    return r;
}

VerificationReport verify_malliavin(const CylinderFunctional& F, const Shift& phi,
                                    Grid grid, std::int64_t n_samples,
                                    RngStream stream, const ReportConfig& cfg) {
    if (!(phi.grid == grid)) throw Error("verify_malliavin: grid mismatch");
    const auto nodes = cylinder_nodes(F, grid);
    const auto est = estimate_vec(
        [&](DrawRng& rng, std::span<double> out) {
            const auto w = sample_brownian(grid, rng);
            const double lhs = gateaux(F, nodes, w, phi);
            const double rhs = div_A(phi, w) * F.f(values_at(w, nodes));
            out[0] = lhs;
            out[1] = rhs;
            out[2] = lhs - rhs;
        },
        3, n_samples, stream);
    auto r = check_paired("malliavin[" + F.label + "]", "a16", est[0], est[1],
                          est[2], cfg);
    r.seed = stream.seed;
    r.grid_n = grid.n;
    return r;
}

} // namespace volforms
