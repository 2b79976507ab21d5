#pragma once

#include <utility>

#include "grs/profile.hpp"
#include "grs/state.hpp"

namespace grs {

/// Curvature and torsion quantities of the warped product dt^2 + phi^2 dsigma^2
/// with H = h dt ^ e^12, h = k phi^2 e^f.
struct GeometrySample {
    double t = 0.0;
    double k_rad = 0.0;      // -phi''/phi
    double k_tan = 0.0;      // (1 - phi'^2)/phi^2
    double ric_rr = 0.0;     // Ric(xi, xi) = -2 phi''/phi
    double ric_tt = 0.0;     // Ric(e, e) in a unit orbit frame
    double h = 0.0;
    double normH2 = 0.0;     // |H|^2_g = 6 h^2 / phi^4
    double h_density = 0.0;  // h / t^2, the coefficient of the euclidean volume form
    double scal = 0.0;
};

GeometrySample geometry_at(const SolitonState& s, double k);

/// log(h / t^2), finite even where h_density underflows; -inf when k = 0.
double log_h_density(const SolitonState& s, double k);

/// Residuals of the two curvature equations
///   1 - phi'^2 - phi phi'' = -phi phi' f' + c^2 e^{2f} phi^2,
///   -2 phi phi''           = -f'' phi^2 + c^2 e^{2f} phi^2,
/// given externally supplied second derivatives.
std::pair<double, double> soliton_residual(const SolitonState& s, double ddphi, double ddf,
                                           double k);

/// As above with phi'' and f'' taken from the profile system.
std::pair<double, double> soliton_residual(const SolitonState& s, double k);

/// Richardson-extrapolated limits (-K_rad, -K_tan) as t -> 0+, from the seed
/// of the trajectory's parameters at eps, eps/2 and eps/4.
std::pair<double, double> curvature_limit_q(const Trajectory& trajectory);
std::pair<double, double> curvature_limit_q(const SeedExpansion& seed, double eps);

}  // namespace grs
