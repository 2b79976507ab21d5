#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grs/params.hpp"
#include "grs/seed.hpp"
#include "grs/state.hpp"

namespace grs {

/// The orbit sphere has shrunk to a point (phi <= 0).
class OrbitCollapse : public std::domain_error {
public:
    explicit OrbitCollapse(double t)
        : std::domain_error("orbit collapse (phi <= 0) at t = " + std::to_string(t)), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

struct ProfileDerivs {
    double dphi = 0.0;
    double ddphi = 0.0;
    double df = 0.0;
    double ddf = 0.0;
};

/// Right-hand side of the profile system
///   phi'' = (1 - phi'^2)/phi + phi' f' - c^2 phi e^{2f},
///   f''   = 2(1 - phi'^2)/phi^2 + 2 (phi'/phi) f' - c^2 e^{2f},
/// with c^2 = k^2/2. Throws OrbitCollapse when phi <= 0.
ProfileDerivs rhs(const SolitonState& s, double k);

enum class Termination { ReachedTMax, OrbitCollapse, StepUnderflow, NonFinite };

std::string_view termination_name(Termination t);

struct Trajectory {
    SolitonParams params;
    std::vector<SolitonState> samples;  // strictly increasing t, first at eps
    std::vector<double> radial;         // r(t) = primitive of 1/phi, per sample
    Termination termination = Termination::ReachedTMax;
    double t_stop = 0.0;                // t_max, or where integration stopped
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Integrates from the seed at eps to params.t_max. When sample_times is
/// empty every accepted step is recorded; otherwise the trajectory holds the
/// seed state at eps followed by dense output at the requested times.
Trajectory integrate(const SolitonParams& params, const SeedExpansion& seed,
                     std::span<const double> sample_times = {});

/// Sample grid specification: "lin:N", "log:N" or "step:DT".
struct SampleGrid {
    enum class Kind { Linear, Log, Step } kind = Kind::Log;
    double value = 1000;

    static SampleGrid parse(std::string_view spec);
    std::string to_string() const;
    /// Grid points in [lo, hi], strictly increasing, both ends included.
    std::vector<double> times(double lo, double hi) const;
};

}  // namespace grs
