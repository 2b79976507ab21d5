#include "grs/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace grs {

GeometrySample geometry_at(const SolitonState& s, double k) {
    const ProfileDerivs d = rhs(s, k);
    const double phi = s.phi;
    const double one_minus_dphi_sq = (1.0 - s.dphi) * (1.0 + s.dphi);

    GeometrySample g;
    g.t = s.t;
    g.k_rad = -d.ddphi / phi;
    g.k_tan = one_minus_dphi_sq / (phi * phi);
    g.ric_rr = 2.0 * g.k_rad;
    g.ric_tt = (one_minus_dphi_sq - phi * d.ddphi) / (phi * phi);
    g.h = k * phi * phi * std::exp(s.f);
    g.normH2 = 6.0 * k * k * std::exp(2.0 * s.f);
    g.h_density = g.h / (s.t * s.t);
    g.scal = 2.0 * (2.0 * g.k_rad + g.k_tan);
    return g;
}

double log_h_density(const SolitonState& s, double k) {
    if (k == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(k) + 2.0 * std::log(s.phi) + s.f - 2.0 * std::log(s.t);
}

std::pair<double, double> soliton_residual(const SolitonState& s, double ddphi, double ddf,
                                           double k) {
    const double phi = s.phi;
    const double phi2 = phi * phi;
    const double torsion = 0.5 * k * k * std::exp(2.0 * s.f) * phi2;
    const double one_minus_dphi_sq = (1.0 - s.dphi) * (1.0 + s.dphi);
    const double r1 = (one_minus_dphi_sq - phi * ddphi) - (-phi * s.dphi * s.df + torsion);
    const double r2 = -2.0 * phi * ddphi - (-ddf * phi2 + torsion);
    return {r1, r2};
}

std::pair<double, double> soliton_residual(const SolitonState& s, double k) {
    const ProfileDerivs d = rhs(s, k);
    return soliton_residual(s, d.ddphi, d.ddf, k);
}

std::pair<double, double> curvature_limit_q(const SeedExpansion& seed, double eps) {
    // -K(t) = q + c_1 t^2 + c_2 t^4 + ...; two Richardson levels in t^2.
    std::array<double, 3> neg_rad{};
    std::array<double, 3> neg_tan{};
    double t = eps;
    for (int i = 0; i < 3; ++i, t *= 0.5) {
        const SeedJet j = seed.jet(t);
        neg_rad[i] = j.ddphi / j.phi;
        neg_tan[i] = -j.one_minus_dphi * (2.0 - j.one_minus_dphi) / (j.phi * j.phi);
    }
    auto extrapolate = [](const std::array<double, 3>& g) {
        const double r0 = (4.0 * g[1] - g[0]) / 3.0;
        const double r1 = (4.0 * g[2] - g[1]) / 3.0;
        return (16.0 * r1 - r0) / 15.0;
    };
    return {extrapolate(neg_rad), extrapolate(neg_tan)};
}

std::pair<double, double> curvature_limit_q(const Trajectory& trajectory) {
    const SeedExpansion seed = compute_seed(trajectory.params);
    return curvature_limit_q(seed, trajectory.params.eps_handoff);
}

}  // namespace grs
