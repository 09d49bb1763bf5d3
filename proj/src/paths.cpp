#include "volforms/paths.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "volforms/error.hpp"
#include "volforms/kernels/kernels.hpp"

namespace volforms {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(Grid grid) {
    if (grid.n < 1) throw Error("grid: need at least one step");
}

void check_same_grid(Grid a, Grid b, const char* who) {
    if (!(a == b)) throw Error(std::string(who) + ": grid mismatch");
}

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v)
        if (!std::isfinite(x)) throw Error(std::string(who) + ": non-finite entry");
}

} // namespace

int node_index(Grid grid, double t) {
    check_grid(grid);
    const double scaled = t * grid.n;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 * grid.n || rounded < 0 || rounded > grid.n)
        throw Error("t = " + std::to_string(t) + " is not a node of the " +
                    std::to_string(grid.n) + "-step grid");
    return int(rounded);
}

Shift shift_from_values(Grid grid, std::vector<double> node_values) {
    check_grid(grid);
    if (int(node_values.size()) != grid.n + 1)
        throw Error("shift_from_values: need n+1 node values");
    if (node_values[0] != 0.0)
        throw Error("shift_from_values: shifts must vanish at t = 0");
    check_finite(node_values, "shift_from_values");
    Shift s;
    s.grid = grid;
    s.values = std::move(node_values);
    s.deriv.resize(std::size_t(grid.n));
    for (int i = 0; i < grid.n; ++i)
        s.deriv[std::size_t(i)] = (s.values[std::size_t(i) + 1] - s.values[std::size_t(i)]) * grid.n;
    return s;
}

Shift shift_from_functions(Grid grid, const std::function<double(double)>& phi,
                           const std::function<double(double)>& dphi,
                           const std::function<double(double)>* ddphi) {
    check_grid(grid);
    if (std::abs(phi(0.0)) > 1e-12)
        throw Error("shift_from_functions: shifts must vanish at t = 0");
    Shift s;
    s.grid = grid;
    s.values.resize(std::size_t(grid.n) + 1);
    s.values[0] = 0.0;
    for (int i = 1; i <= grid.n; ++i) s.values[std::size_t(i)] = phi(grid.node(i));
    s.deriv.resize(std::size_t(grid.n));
    for (int i = 0; i < grid.n; ++i) s.deriv[std::size_t(i)] = dphi(grid.midpoint(i));
    if (ddphi) {
        s.second_deriv.resize(std::size_t(grid.n));
        for (int i = 0; i < grid.n; ++i)
            s.second_deriv[std::size_t(i)] = (*ddphi)(grid.midpoint(i));
        check_finite(s.second_deriv, "shift_from_functions");
    }
    check_finite(s.values, "shift_from_functions");
    check_finite(s.deriv, "shift_from_functions");
    return s;
}

Shift basis_shift(Grid grid, int k) {
    if (k < 1) throw Error("basis_shift: index starts at 1");
    const double a = (double(k) - 0.5) * std::numbers::pi;
    const double root2 = std::numbers::sqrt2;
    const std::function<double(double)> phi = [=](double t) { return root2 * std::sin(a * t) / a; };
    const std::function<double(double)> dphi = [=](double t) { return root2 * std::cos(a * t); };
    const std::function<double(double)> ddphi = [=](double t) { return -root2 * a * std::sin(a * t); };
    return shift_from_functions(grid, phi, dphi, &ddphi);
}

Shift linear_shift(Grid grid) {
    const std::function<double(double)> phi = [](double t) { return t; };
    const std::function<double(double)> dphi = [](double) { return 1.0; };
    return shift_from_functions(grid, phi, dphi);
}

Shift zero_shift(Grid grid) {
    check_grid(grid);
    return shift_from_values(grid, std::vector<double>(std::size_t(grid.n) + 1, 0.0));
}

DiscretePath sample_brownian(Grid grid, DrawRng& rng) {
    check_grid(grid);
    DiscretePath w;
    w.grid = grid;
    w.values.resize(std::size_t(grid.n) + 1);
    std::vector<double> z(std::size_t(grid.n));
    rng.fill_normals(z);
    const double s = std::sqrt(grid.dt());
    w.values[0] = 0.0;
    for (int i = 0; i < grid.n; ++i)
        w.values[std::size_t(i) + 1] = w.values[std::size_t(i)] + s * z[std::size_t(i)];
    return w;
}

DiscretePath shifted(const DiscretePath& w, const Shift& phi, double scale) {
    check_same_grid(w.grid, phi.grid, "shifted");
    DiscretePath out;
    out.grid = w.grid;
    out.values.resize(w.values.size());
    kernels::add_scaled(out.values, w.values, scale, phi.values);
    return out;
}

double div_A(const Shift& phi, const DiscretePath& w) {
    check_same_grid(w.grid, phi.grid, "div_A");
    return kernels::dot_increments(phi.deriv, w.values);
}

double div_A_by_parts(const Shift& phi, const DiscretePath& w) {
    check_same_grid(w.grid, phi.grid, "div_A_by_parts");
    if (!phi.has_second_deriv())
        throw Error("div_A_by_parts: second-derivative data required");
    // boundary conditions phi(0) = 0 (a construction invariant) and
    // phi'(1) = 0, without which the dropped boundary term w(1) phi'(1)
    // would not vanish
    double dd_max = 0.0;
    for (double x : phi.second_deriv) dd_max = std::max(dd_max, std::abs(x));
    if (std::abs(phi.deriv.back()) > phi.grid.dt() * dd_max + 1e-12)
        throw Error("div_A_by_parts: phi'(1) = 0 is required");
    const double dt = phi.grid.dt();
    double acc = 0.0;
    for (int i = 0; i < phi.grid.n; ++i)
        acc += w.values[std::size_t(i)] * phi.second_deriv[std::size_t(i)];
    return -acc * dt;
}

double riemann_Q(const DiscretePath& w) {
    return kernels::sum_sq_increments(w.values) * double(w.grid.n) / kTwoPi;
}

double q_difference(const DiscretePath& w, const Shift& phi) {
    check_same_grid(w.grid, phi.grid, "q_difference");
    const double cross = div_A(phi, w);
    const double norm_sq = kernels::dot(phi.deriv, phi.deriv) * phi.grid.dt();
    return (2.0 * cross - norm_sq) / kTwoPi;
}

double inner_21(const Shift& phi1, const Shift& phi2) {
    check_same_grid(phi1.grid, phi2.grid, "inner_21");
    return kernels::dot(phi1.deriv, phi2.deriv) * phi1.grid.dt();
}

double pair_dual(const DualMeasure& wp, const DiscretePath& w) {
    double acc = 0.0;
    for (const auto& atom : wp.atoms) {
        if (!(atom.t > 0.0 && atom.t <= 1.0))
            throw Error("dual measure atom outside (0,1]");
        acc += atom.a * w.values[std::size_t(node_index(w.grid, atom.t))];
    }
    return acc;
}

double dual_kernel_quadratic(const DualMeasure& wp) {
    double acc = 0.0;
    for (const auto& aj : wp.atoms)
        for (const auto& ak : wp.atoms) acc += aj.a * ak.a * std::min(aj.t, ak.t);
    return acc;
}

void write_path_csv(const DiscretePath& w, std::ostream& os) {
    os << "t,w\n";
    char buf[64];
    for (int i = 0; i <= w.grid.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", w.grid.node(i),
                      w.values[std::size_t(i)]);
        os << buf;
    }
}

} // namespace volforms
