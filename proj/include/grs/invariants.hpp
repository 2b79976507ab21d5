#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grs/params.hpp"
#include "grs/profile.hpp"
#include "grs/state.hpp"

namespace grs {

/// The two forms of the first integral, both equal to 6q + 5c^2 on solutions:
///   q1 = k^2 e^{2f} + f'' + 2 (phi'/phi) f' - f'^2                   (f'' from the ODE)
///   q2 = 2 (1 - phi'^2)/phi^2 + 4 (phi'/phi) f' - f'^2 + c^2 e^{2f}
struct ConservedCheck {
    double t = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double target = 0.0;
    double drift1 = 0.0;
    double drift2 = 0.0;
};

ConservedCheck conserved_at(const SolitonState& s, const SolitonParams& params);

/// (f' - 2 phi'/phi)^2 - 2 (1 + phi'^2)/phi^2 - c^2 e^{2f}; constant (= -(6q + 5c^2)).
double pint_constant(const SolitonState& s, const SolitonParams& params);

struct ConservationSummary {
    double max_drift1 = 0.0;
    double max_drift2 = 0.0;
    double worst_t1 = 0.0;
    double worst_t2 = 0.0;
};

ConservationSummary summarize_conservation(const Trajectory& traj);

struct PropositionCheck {
    std::string name;
    bool pass = true;
    bool asserted = true;  // false: reported observation only
    double margin = 0.0;   // worst-case slack; pass requires margin > 0 (>= 0 for bounds)
    double worst_t = 0.0;
};

struct LemmaLinearBound {
    double T = 0.0;  // anchor point
    double a = 0.0;  // slope f'(T) < 0
    double M = 0.0;  // f(t) <= a t + M for t >= T
};

struct PropertyReport {
    bool asserted = false;  // inside the proven regime
    std::vector<PropositionCheck> checks;
    std::optional<LemmaLinearBound> linear_bound;

    bool all_pass() const;
    /// First asserted check that failed, if any.
    const PropositionCheck* first_failure() const;
};

class PropositionViolated : public std::runtime_error {
public:
    PropositionViolated(std::string name, double t, double margin);
    const std::string& name() const { return name_; }
    double t() const { return t_; }
    double margin() const { return margin_; }

private:
    std::string name_;
    double t_;
    double margin_;
};

/// Slack added to the phi e^f estimate.
inline constexpr double kEstimateSlack = 1e-9;

/// (2|6q+5|)^{-1/4}.
double phi_exp_f_bound(double q);

/// Checks the qualitative statements at every sample with t > eps.
PropertyReport check_propositions(const Trajectory& traj, const SolitonParams& params);

/// Throws PropositionViolated for the first failing asserted check.
void enforce(const PropertyReport& report);

struct AsymptoticFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double r_phi_err = 0.0;      // max |phi^2 |6q+5| / (2t) - 1|
    double r_phi_sqrt_err = 0.0; // max |phi^2 sqrt|6q+5| / (2t) - 1|, the rate phi^2 / t -> 2/sqrt|6q+5|
    double r_f_err = 0.0;        // max |-f / (sqrt|6q+5| t) - 1|
    double fprime_limit = 0.0;   // f'(t_stop)
    double fprime_target = 0.0;  // -sqrt|6q+5|
    double h_decay_slope = 0.0;  // least-squares slope of log(h/t^2) against t
    std::size_t samples = 0;
};

/// Asymptotics over the last decade [t_stop/10, t_stop]. Empty unless k != 0,
/// 6q + 5 < 0, the run reached t >= 1e3, and the window holds >= 3 samples.
std::optional<AsymptoticFit> fit_asymptotics(const Trajectory& traj, const SolitonParams& params);

}  // namespace grs
