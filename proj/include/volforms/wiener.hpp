#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "volforms/paths.hpp"
#include "volforms/report.hpp"

namespace volforms {

/// A functional of finitely many path values F(w) = f(w(t_1), ..., w(t_m)).
/// The pairing convention throughout is exp(-i<w',w>); an alternative
/// normalization uses exp(-2 pi i <w',w>) with a rescaled kernel and is not
/// implemented.
struct CylinderFunctional {
    std::string label;
    std::vector<double> times; // strictly increasing, within (0,1]
    std::function<double(std::span<const double>)> f;
    // optional analytic gradient; central differences otherwise
    std::function<std::vector<double>(std::span<const double>)> grad;

    bool has_grad() const { return static_cast<bool>(grad); }
};

/// Path values at the functional's times (all must be grid nodes).
std::vector<int> cylinder_nodes(const CylinderFunctional& F, Grid grid);

/// Gateaux differential of F at w in the direction phi: the analytic
/// gradient contracted with phi(t_j), or a central difference of step
/// eps = (machine epsilon)^{1/3} (1 + |w|_inf) along phi.
double gateaux(const CylinderFunctional& F, std::span<const int> nodes,
               const DiscretePath& w, const Shift& phi);

/// Radon-Nikodym density J(phi, w) = exp(-|phi|^2/2 + A_phi(w)) on the grid.
double cm_density(const Shift& phi, const DiscretePath& w);

/// Monte Carlo E[exp(-i<w',w>)] against the exact kernel expression
/// exp(-(1/2) sum_jk a_j a_k min(t_j,t_k)); real and imaginary components
/// are reported as sub-cases.
VerificationReport verify_characteristic_functional(const DualMeasure& wp,
                                                    Grid grid,
                                                    std::int64_t n_samples,
                                                    RngStream stream,
                                                    const ReportConfig& cfg);

/// E[F(w + phi)] against E[J(phi,w) F(w)] on common paths.
VerificationReport verify_cameron_martin(const CylinderFunctional& F,
                                         const Shift& phi, Grid grid,
                                         std::int64_t n_samples, RngStream stream,
                                         const ReportConfig& cfg);

/// E[D_phi F(w)] against E[A_phi(w) F(w)] on common paths.
VerificationReport verify_malliavin(const CylinderFunctional& F, const Shift& phi,
                                    Grid grid, std::int64_t n_samples,
                                    RngStream stream, const ReportConfig& cfg);

} // namespace volforms
