#pragma once

// Autonomous first-order form of the profile system in the variables
//   x = phi',  y = 2 phi' - f' phi,  z = e^f phi,
// with parameter r, dr = dt / phi. phi^2 is carried alongside because the
// first integral 2x^2 - y^2 + z^2 + 2 = (6q + 5) phi^2 needs it.

#include <span>
#include <vector>

#include "grs/params.hpp"
#include "grs/profile.hpp"
#include "grs/seed.hpp"
#include "grs/state.hpp"

namespace grs {

struct PhaseState {
    double r = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double phi_sq = 0.0;
};

struct PhaseDerivs {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
    double dphi_sq = 0.0;
};

PhaseState to_phase(const SolitonState& s, double r = 0.0);

/// dx/dr = x^2 - xy + 1 - z^2, dy/dr = x(y - 2x) - z^2, dz/dr = (3x - y) z,
/// d(phi^2)/dr = 2 x phi^2. The z^2 terms carry the factor c^2 = k^2/2, so
/// k = 0 gives the torsion-free system.
PhaseDerivs phase_rhs(const PhaseState& s, double k = kTorsionSqrt2);

/// 2x^2 - y^2 + z^2 + 2 - (6q + 5) phi^2 (general k: z^2 -> c^2 z^2, 5 -> 5c^2).
double first_integral_residual(const PhaseState& s, const SolitonParams& params);

struct PhaseTrajectory {
    SolitonParams params;
    std::vector<PhaseState> samples;
    Termination termination = Termination::ReachedTMax;
    double r_stop = 0.0;
};

/// Integrates from to_phase(eval_seed(eps)) at r(eps) up to r_samples.back()
/// (absolute tolerance scaled by phi(eps)^2),
/// recording the state at each requested r (entries <= r(eps) are skipped).
PhaseTrajectory integrate_phase(const SolitonParams& params, const SeedExpansion& seed,
                                std::span<const double> r_samples);

struct CrossValidation {
    double max_dx = 0.0;
    double max_dy = 0.0;
    double max_dz = 0.0;
    double max_dphi_sq_rel = 0.0;
    double max_deviation = 0.0;                    // max of dx, dy, dz
    double max_first_integral_drift = 0.0;         // raw residual of the first integral
    double max_first_integral_drift_scaled = 0.0;  // residual / phi^2
    double worst_t = 0.0;
    std::size_t compared = 0;
};

/// Compares the phase run against to_phase(profile) at matching r. The phase
/// run must have been sampled at the profile's radial parameters.
CrossValidation cross_validate(const Trajectory& profile, const PhaseTrajectory& phase);

}  // namespace grs
