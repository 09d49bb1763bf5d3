#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "volforms/estimator.hpp"

namespace volforms {

/// Uniform grid 0 = t_0 < t_1 < ... < t_n = 1.
struct Grid {
    int n = 0;
    double dt() const { return 1.0 / n; }
    double node(int i) const { return double(i) / n; }
    double midpoint(int i) const { return (double(i) + 0.5) / n; }
    bool operator==(const Grid&) const = default;
};

/// Index of the node equal to t, or an error if t is off-grid. No
/// interpolation anywhere in this module.
int node_index(Grid grid, double t);

/// A pointed path: w_0 = 0.
struct DiscretePath {
    Grid grid;
    std::vector<double> values; // size n+1
};

/// A translation direction with square-integrable derivative. `deriv` holds
/// one value per cell [t_i, t_{i+1}] and is paired with the forward increment
/// w_{i+1} - w_i in every stochastic integral.
///
/// Two constructions are provided. shift_from_values derives `deriv` as the
/// forward difference quotients of the node values, which makes the quadratic
/// form algebra below exact on the grid. shift_from_functions samples an
/// analytic derivative at cell midpoints, which makes the built-in basis
/// family exactly orthonormal under inner_21.
struct Shift {
    Grid grid;
    std::vector<double> values;       // node values, size n+1, values[0] = 0
    std::vector<double> deriv;        // cell values, size n
    std::vector<double> second_deriv; // cell values, size n; empty if absent

    bool has_second_deriv() const { return !second_deriv.empty(); }
};

Shift shift_from_values(Grid grid, std::vector<double> node_values);

Shift shift_from_functions(Grid grid, const std::function<double(double)>& phi,
                           const std::function<double(double)>& dphi,
                           const std::function<double(double)>* ddphi = nullptr);

/// e_k(t) = sqrt(2) sin((k - 1/2) pi t) / ((k - 1/2) pi). The derivatives
/// sqrt(2) cos((k - 1/2) pi t) are orthonormal on [0,1], e_k(0) = 0 and
/// e_k'(1) = 0, so the family is valid for the by-parts form as well.
Shift basis_shift(Grid grid, int k);

/// phi(t) = t.
Shift linear_shift(Grid grid);

Shift zero_shift(Grid grid);

/// Brownian path on the grid: w_0 = 0, independent N(0, dt) increments.
DiscretePath sample_brownian(Grid grid, DrawRng& rng);

/// w + scale * phi, node-wise.
DiscretePath shifted(const DiscretePath& w, const Shift& phi, double scale = 1.0);

/// Ito-style Riemann sum  sum_i deriv_i (w_{i+1} - w_i).
double div_A(const Shift& phi, const DiscretePath& w);

/// By-parts form  -sum_i w_i ddphi(t_i+) dt, valid when phi(0) = 0 and
/// phi'(1) = 0; requires second-derivative data.
double div_A_by_parts(const Shift& phi, const DiscretePath& w);

/// (1/2pi) sum_i (w_{i+1} - w_i)^2 / dt. Diverges linearly in n for
/// Brownian samples: E = n / 2pi.
double riemann_Q(const DiscretePath& w);

/// riemann_Q(w) - riemann_Q(w - phi) computed via the expanded form
/// (1/2pi)(2 div_A(phi, w) - |phi|^2_{2,1}), which stays finite as n grows.
double q_difference(const DiscretePath& w, const Shift& phi);

/// sum_i deriv1_i deriv2_i dt.
double inner_21(const Shift& phi1, const Shift& phi2);

/// A bounded measure on (0,1] with finitely many atoms; pairing
/// <w', w> = sum_k a_k w(t_k).
struct DualMeasure {
    struct Atom {
        double t;
        double a;
    };
    std::vector<Atom> atoms;
};

/// sum_k a_k w(t_k); every atom must sit on a grid node.
double pair_dual(const DualMeasure& wp, const DiscretePath& w);

/// sum_{j,k} a_j a_k min(t_j, t_k) — the covariance kernel evaluation.
double dual_kernel_quadratic(const DualMeasure& wp);

/// CSV dump, header "t,w", one row per node.
void write_path_csv(const DiscretePath& w, std::ostream& os);

} // namespace volforms
