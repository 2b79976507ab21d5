#include "grs/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "grs/ode.hpp"

namespace grs {

PhaseState to_phase(const SolitonState& s, double r) {
    return {r, s.dphi, 2.0 * s.dphi - s.df * s.phi, std::exp(s.f) * s.phi, s.phi * s.phi};
}

PhaseDerivs phase_rhs(const PhaseState& s, double k) {
    const double c2 = 0.5 * k * k;
    const double z2 = c2 * s.z * s.z;
    return {s.x * s.x - s.x * s.y + 1.0 - z2, s.x * (s.y - 2.0 * s.x) - z2,
            (3.0 * s.x - s.y) * s.z, 2.0 * s.x * s.phi_sq};
}

double first_integral_residual(const PhaseState& s, const SolitonParams& params) {
    return 2.0 * s.x * s.x - s.y * s.y + params.c2() * s.z * s.z + 2.0 -
           params.conserved_target() * s.phi_sq;
}

PhaseTrajectory integrate_phase(const SolitonParams& params, const SeedExpansion& seed,
                                std::span<const double> r_samples) {
    params.validate();
    if (r_samples.empty()) {
        throw std::invalid_argument("integrate_phase needs at least one output r");
    }
    using Vec = std::array<double, 4>;
    const double eps = params.eps_handoff;
    const double r0 = seed.radial_parameter(eps);
    const SolitonState s0 = eval_seed(seed, eps);
    const PhaseState p0 = to_phase(s0, r0);
    const SeedJet j0 = seed.jet(eps);
    const double w0 = j0.one_minus_dphi;
    const double v0 = -2.0 * j0.one_minus_dphi - j0.df * j0.phi;
    const double k = params.k;

    PhaseTrajectory traj;
    traj.params = params;

    // State (w, v, z, phi^2) with w = 1 - x, v = y - 2.
    const double c2 = 0.5 * k * k;
    auto field = [c2](double, const Vec& s, Vec& ds) {
        if (!(s[3] > 0.0)) {
            return false;
        }
        const double w = s[0];
        const double v = s[1];
        const double z2 = c2 * s[2] * s[2];
        ds[0] = v - w * w - w * v + z2;
        ds[1] = (1.0 - w) * (v + 2.0 * w) - z2;
        ds[2] = (1.0 - 3.0 * w - v) * s[2];
        ds[3] = 2.0 * (1.0 - w) * s[3];
        return true;
    };
    auto never = [](const Vec&) { return 1.0; };
    auto sample = [&traj](double r, const Vec& s) {
        traj.samples.push_back({r, 1.0 - s[0], 2.0 + s[1], s[2], s[3]});
    };

    ode::DriveOptions opt = params.drive_options();
    opt.tol.abs_tol *= p0.phi_sq;
    const auto res = ode::drive<4>(field, never, sample, r0, Vec{w0, v0, p0.z, p0.phi_sq},
                                   r_samples.back(), r_samples, opt);
    traj.r_stop = res.t;
    switch (res.status) {
        case ode::DriveStatus::ReachedEnd: traj.termination = Termination::ReachedTMax; break;
        case ode::DriveStatus::Event: traj.termination = Termination::OrbitCollapse; break;
        case ode::DriveStatus::StepUnderflow: traj.termination = Termination::StepUnderflow; break;
        case ode::DriveStatus::NonFinite: traj.termination = Termination::NonFinite; break;
    }
    return traj;
}

CrossValidation cross_validate(const Trajectory& profile, const PhaseTrajectory& phase) {
    const std::size_t n = std::min(profile.samples.size(), phase.samples.size());
    CrossValidation cv;
    for (std::size_t i = 0; i < n; ++i) {
        const PhaseState& p = phase.samples[i];
        if (p.r != profile.radial[i]) {
            throw std::invalid_argument("phase run was not sampled at the profile's r values");
        }
        const PhaseState ref = to_phase(profile.samples[i], profile.radial[i]);
        const double dx = std::abs(p.x - ref.x);
        const double dy = std::abs(p.y - ref.y);
        const double dz = std::abs(p.z - ref.z);
        cv.max_dx = std::max(cv.max_dx, dx);
        cv.max_dy = std::max(cv.max_dy, dy);
        cv.max_dz = std::max(cv.max_dz, dz);
        cv.max_dphi_sq_rel = std::max(cv.max_dphi_sq_rel, std::abs(p.phi_sq / ref.phi_sq - 1.0));
        const double dev = std::max({dx, dy, dz});
        if (dev > cv.max_deviation) {
            cv.max_deviation = dev;
            cv.worst_t = profile.samples[i].t;
        }
        ++cv.compared;
    }
    for (const PhaseState& p : phase.samples) {
        const double res = std::abs(first_integral_residual(p, phase.params));
        cv.max_first_integral_drift = std::max(cv.max_first_integral_drift, res);
        cv.max_first_integral_drift_scaled = std::max(cv.max_first_integral_drift_scaled, res / p.phi_sq);
    }
    return cv;
}

}  // namespace grs
