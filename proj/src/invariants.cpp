#include "grs/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grs/geometry.hpp"

namespace grs {

ConservedCheck conserved_at(const SolitonState& s, const SolitonParams& params) {
    const ProfileDerivs d = rhs(s, params.k);
    const double c2 = params.c2();
    const double e2f = std::exp(2.0 * s.f);
    const double ratio = s.dphi / s.phi;
    const double one_minus_dphi_sq = (1.0 - s.dphi) * (1.0 + s.dphi);

    ConservedCheck c;
    c.t = s.t;
    c.target = params.conserved_target();
    c.q1 = 2.0 * c2 * e2f + d.ddf + 2.0 * ratio * s.df - s.df * s.df;
    c.q2 = 2.0 * one_minus_dphi_sq / (s.phi * s.phi) + 4.0 * ratio * s.df - s.df * s.df +
           c2 * e2f;
    c.drift1 = std::abs(c.q1 - c.target);
    c.drift2 = std::abs(c.q2 - c.target);
    return c;
}

double pint_constant(const SolitonState& s, const SolitonParams& params) {
    const double ratio = s.dphi / s.phi;
    const double u = s.df - 2.0 * ratio;
    return u * u - 2.0 * (1.0 + s.dphi * s.dphi) / (s.phi * s.phi) -
           params.c2() * std::exp(2.0 * s.f);
}

ConservationSummary summarize_conservation(const Trajectory& traj) {
    ConservationSummary out;
    for (const auto& s : traj.samples) {
        const ConservedCheck c = conserved_at(s, traj.params);
        if (c.drift1 > out.max_drift1) {
            out.max_drift1 = c.drift1;
            out.worst_t1 = s.t;
        }
        if (c.drift2 > out.max_drift2) {
            out.max_drift2 = c.drift2;
            out.worst_t2 = s.t;
        }
    }
    return out;
}

bool PropertyReport::all_pass() const { return first_failure() == nullptr; }

const PropositionCheck* PropertyReport::first_failure() const {
    for (const auto& c : checks) {
        if (c.asserted && !c.pass) {
            return &c;
        }
    }
    return nullptr;
}

PropositionViolated::PropositionViolated(std::string name, double t, double margin)
    : std::runtime_error("proposition '" + name + "' violated at t = " + std::to_string(t) +
                         " (margin " + std::to_string(margin) + ")"),
      name_(std::move(name)),
      t_(t),
      margin_(margin) {}

double phi_exp_f_bound(double q) { return std::pow(2.0 * std::abs(6.0 * q + 5.0), -0.25); }

namespace {

// Tracks min over samples of a margin function.
struct MinTracker {
    double margin = std::numeric_limits<double>::infinity();
    double t = 0.0;
    void update(double m, double at) {
        if (m < margin) {
            margin = m;
            t = at;
        }
    }
};

}  // namespace

PropertyReport check_propositions(const Trajectory& traj, const SolitonParams& params) {
    PropertyReport report;
    const bool torsion = params.torsion();
    report.asserted = params.in_theorem_regime();
    // The torsion-free system is Bryant's; only his qualitative shape is asserted there.
    const bool bryant = !torsion && params.q < 0.0;

    const double eps = params.eps_handoff;
    MinTracker phi_pos, dphi_pos, dphi_lt1, concave, f_neg, f_decr, krad_pos, ktan_pos, est;
    const double bound = torsion ? phi_exp_f_bound(params.q) : 0.0;

    // Linear upper bound on f: anchor at the first sample where
    // psi = -2 f'/phi + f'^2 is within eps_l of its limit -2(2q+1) and f'' < 0.
    const double psi0 = -2.0 * (2.0 * params.q + 1.0);
    const double eps_l = 0.5 * (-2.0 * params.q - 3.0);
    std::optional<std::size_t> anchor;

    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const SolitonState& s = traj.samples[i];
        if (!(s.t > eps)) {
            continue;
        }
        phi_pos.update(s.phi, s.t);
        if (!(s.phi > 0.0)) {
            continue;
        }
        const ProfileDerivs d = rhs(s, params.k);
        const GeometrySample g = geometry_at(s, params.k);
        dphi_pos.update(s.dphi, s.t);
        dphi_lt1.update(1.0 - s.dphi, s.t);
        concave.update(-d.ddphi, s.t);
        f_neg.update(-s.f, s.t);
        f_decr.update(-s.df, s.t);
        krad_pos.update(g.k_rad, s.t);
        ktan_pos.update(g.k_tan, s.t);
        if (torsion) {
            est.update(bound + kEstimateSlack - s.phi * std::exp(s.f), s.t);
        }
        if (!anchor && eps_l > 0.0) {
            const double psi = -2.0 * s.df / s.phi + s.df * s.df;
            if (psi < psi0 + eps_l && d.ddf < 0.0) {
                anchor = i;
            }
        }
    }

    const bool a = report.asserted;
    auto add = [&](const char* name, const MinTracker& m, bool asserted, bool inclusive = false) {
        PropositionCheck c;
        c.name = name;
        c.margin = m.margin;
        c.worst_t = m.t;
        c.pass = inclusive ? m.margin >= 0.0 : m.margin > 0.0;
        c.asserted = asserted;
        report.checks.push_back(c);
    };

    if (a || bryant) {
        PropositionCheck reached;
        reached.name = "reached_t_max";
        reached.pass = traj.termination == Termination::ReachedTMax;
        reached.margin = traj.t_stop - params.t_max;
        reached.worst_t = traj.t_stop;
        report.checks.push_back(reached);
    }
    add("phi_positive", phi_pos, a || bryant);
    add("dphi_positive", dphi_pos, a || bryant);
    add("dphi_below_one", dphi_lt1, a);
    add("concave", concave, a || bryant);
    add("f_negative", f_neg, a);
    add("f_decreasing", f_decr, a);
    add("k_rad_positive", krad_pos, a);
    add("k_tan_positive", ktan_pos, a);
    if (torsion) {
        add("phi_exp_f_bound", est, a, true);
    }

    if (torsion) {
        PropositionCheck lin;
        lin.name = "f_linear_upper_bound";
        lin.asserted = a;
        if (anchor) {
            const SolitonState& sT = traj.samples[*anchor];
            LemmaLinearBound lb;
            lb.T = sT.t;
            lb.a = sT.df;
            lb.M = -std::numeric_limits<double>::infinity();
            MinTracker slope;
            for (std::size_t i = *anchor; i < traj.samples.size(); ++i) {
                const SolitonState& s = traj.samples[i];
                lb.M = std::max(lb.M, s.f - lb.a * s.t);
                if (i > *anchor) {
                    slope.update(lb.a - s.df, s.t);
                }
            }
            report.linear_bound = lb;
            lin.margin = std::min(slope.margin, -lb.a);
            lin.worst_t = slope.t;
            lin.pass = lin.margin > 0.0;
        } else {
            lin.pass = false;
            lin.margin = -std::numeric_limits<double>::infinity();
        }
        report.checks.push_back(lin);
    }
    return report;
}

void enforce(const PropertyReport& report) {
    if (const PropositionCheck* c = report.first_failure()) {
        throw PropositionViolated(c->name, c->worst_t, c->margin);
    }
}

std::optional<AsymptoticFit> fit_asymptotics(const Trajectory& traj,
                                             const SolitonParams& params) {
    const double kappa = 6.0 * params.q + 5.0 * params.c2();
    if (!params.torsion() || !(kappa < 0.0) || traj.samples.empty()) {
        return std::nullopt;
    }
    const double t_hi = traj.samples.back().t;
    if (t_hi < 1e3) {
        return std::nullopt;
    }
    const double t_lo = t_hi / 10.0;
    const double abs_kappa = std::abs(kappa);
    const double alpha = std::sqrt(abs_kappa);

    AsymptoticFit fit;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.fprime_limit = traj.samples.back().df;
    fit.fprime_target = -alpha;

    std::vector<double> ts;
    std::vector<double> ys;
    for (const auto& s : traj.samples) {
        if (s.t < t_lo) {
            continue;
        }
        const double r_phi = s.phi * s.phi * abs_kappa / (2.0 * s.t);
        const double r_f = -s.f / (alpha * s.t);
        const double r_phi_sqrt = s.phi * s.phi * alpha / (2.0 * s.t);
        fit.r_phi_err = std::max(fit.r_phi_err, std::abs(r_phi - 1.0));
        fit.r_phi_sqrt_err = std::max(fit.r_phi_sqrt_err, std::abs(r_phi_sqrt - 1.0));
        fit.r_f_err = std::max(fit.r_f_err, std::abs(r_f - 1.0));
        ts.push_back(s.t);
        ys.push_back(log_h_density(s, params.k));
    }
    fit.samples = ts.size();
    if (fit.samples < 3) {
        return std::nullopt;
    }
    const double n = static_cast<double>(fit.samples);
    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        t_mean += ts[i] / n;
        y_mean += ys[i] / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sxx += (ts[i] - t_mean) * (ts[i] - t_mean);
        sxy += (ts[i] - t_mean) * (ys[i] - y_mean);
    }
    fit.h_decay_slope = sxy / sxx;
    return fit;
}

}  // namespace grs
