#include "grs/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include "grs/geometry.hpp"

namespace grs::cli {

using nlohmann::json;

namespace {

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        os << (i ? "," : "") << kCsvColumns[i];
    }
    os << '\n';
    const double k = traj.params.k;
    for (const SolitonState& s : traj.samples) {
        const GeometrySample g = geometry_at(s, k);
        const ConservedCheck c = conserved_at(s, traj.params);
        const PhaseState p = to_phase(s);
        const std::array<double, 16> row{s.t,     s.phi,     s.dphi,      s.f,   s.df, g.k_rad,
                                         g.k_tan, g.h,       g.normH2,    g.h_density,
                                         c.q1,    c.q2,      c.drift2,    p.x,   p.y,  p.z};
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_real(row[i]);
        }
        os << '\n';
    }
}

json to_json(const SolitonParams& p) {
    json j;
    j["q"] = p.q;
    j["ell"] = p.ell ? json(*p.ell) : json(nullptr);
    j["k"] = p.k;
    j["series_order"] = p.series_order;
    j["eps"] = p.eps_handoff;
    j["abs_tol"] = p.abs_tol;
    j["rel_tol"] = p.rel_tol;
    j["t_max"] = p.t_max;
    j["method"] = std::string(ode::method_name(p.method));
    j["conserved_target"] = p.conserved_target();
    j["theorem_regime"] = p.in_theorem_regime();
    return j;
}

json to_json(const ConservationSummary& c) {
    return {{"max_drift1", c.max_drift1},
            {"max_drift2", c.max_drift2},
            {"worst_t1", c.worst_t1},
            {"worst_t2", c.worst_t2}};
}

json to_json(const PropertyReport& r) {
    json list = json::array();
    for (const PropositionCheck& c : r.checks) {
        list.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"asserted", c.asserted},
                        {"margin", real_or_null(c.margin)},
                        {"worst_t", c.worst_t}});
    }
    return list;
}

json to_json(const std::optional<AsymptoticFit>& fit) {
    if (!fit) {
        return nullptr;
    }
    return {{"t_lo", fit->t_lo},
            {"t_hi", fit->t_hi},
            {"R_phi_err", fit->r_phi_err},
            {"R_phi_sqrt_err", fit->r_phi_sqrt_err},
            {"R_f_err", fit->r_f_err},
            {"fprime_limit", fit->fprime_limit},
            {"fprime_target", fit->fprime_target},
            {"h_decay_slope", fit->h_decay_slope},
            {"samples", fit->samples}};
}

json to_json(const CrossValidation& cv) {
    return {{"max_deviation", cv.max_deviation},
            {"max_dx", cv.max_dx},
            {"max_dy", cv.max_dy},
            {"max_dz", cv.max_dz},
            {"max_dphi_sq_rel", cv.max_dphi_sq_rel},
            {"max_first_integral_drift", cv.max_first_integral_drift},
            {"max_first_integral_drift_scaled", cv.max_first_integral_drift_scaled},
            {"worst_t", cv.worst_t},
            {"compared", cv.compared}};
}

}  // namespace grs::cli
