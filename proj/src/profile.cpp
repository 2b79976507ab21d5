#include "grs/profile.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "grs/ode.hpp"

namespace grs {

namespace {

constexpr double kPinchRatio = 1e-6;

// Profile state for the driver: (phi, phi', f, f', r) with r' = 1/phi.
using ProfileVec = std::array<double, 5>;

// Valid for phi != 0; the sign of phi is left to the collapse event.
bool profile_field(double c2, const ProfileVec& y, ProfileVec& dy) {
    const double phi = y[0];
    if (phi == 0.0) {
        return false;
    }
    const double dphi = y[1];
    const double df = y[3];
    const double one_minus_dphi_sq = (1.0 - dphi) * (1.0 + dphi);
    const double e2f = c2 == 0.0 ? 0.0 : c2 * std::exp(2.0 * y[2]);
    const double inv_phi = 1.0 / phi;
    dy[0] = dphi;
    dy[1] = one_minus_dphi_sq * inv_phi + dphi * df - phi * e2f;
    dy[2] = df;
    dy[3] = 2.0 * one_minus_dphi_sq * inv_phi * inv_phi + 2.0 * dphi * df * inv_phi - e2f;
    dy[4] = inv_phi;
    return std::isfinite(dy[1]) && std::isfinite(dy[3]);
}

}  // namespace

ProfileDerivs rhs(const SolitonState& s, double k) {
    if (!(s.phi > 0.0)) {
        throw OrbitCollapse(s.t);
    }
    ProfileVec y{s.phi, s.dphi, s.f, s.df, 0.0};
    ProfileVec dy{};
    profile_field(0.5 * k * k, y, dy);
    return {dy[0], dy[1], dy[2], dy[3]};
}

std::string_view termination_name(Termination t) {
    switch (t) {
        case Termination::ReachedTMax: return "ReachedTMax";
        case Termination::OrbitCollapse: return "OrbitCollapse";
        case Termination::StepUnderflow: return "StepUnderflow";
        case Termination::NonFinite: return "NonFinite";
    }
    return "Unknown";
}

Trajectory integrate(const SolitonParams& params, const SeedExpansion& seed,
                     std::span<const double> sample_times) {
    params.validate();
    const double eps = params.eps_handoff;
    const double c2 = params.c2();

    Trajectory traj;
    traj.params = params;

    const SolitonState s0 = eval_seed(seed, eps);
    const ProfileVec y0{s0.phi, s0.dphi, s0.f, s0.df, seed.radial_parameter(eps)};

    auto field = [c2](double, const ProfileVec& y, ProfileVec& dy) {
        return profile_field(c2, y, dy);
    };
    auto event = [](const ProfileVec& y) { return y[0]; };
    auto sample = [&traj](double t, const ProfileVec& y) {
        if (!traj.samples.empty() && !(t > traj.samples.back().t)) {
            return;
        }
        traj.samples.push_back({t, y[0], y[1], y[2], y[3]});
        traj.radial.push_back(y[4]);
    };

    const auto res = ode::drive<5>(field, event, sample, eps, y0, params.t_max, sample_times,
                                   params.drive_options());
    traj.accepted_steps = res.accepted;
    traj.rejected_steps = res.rejected;
    traj.t_stop = res.t;

    switch (res.status) {
        case ode::DriveStatus::ReachedEnd:
            traj.termination = Termination::ReachedTMax;
            break;
        case ode::DriveStatus::Event:
            traj.termination = Termination::OrbitCollapse;
            break;
        case ode::DriveStatus::NonFinite:
            traj.termination = Termination::NonFinite;
            break;
        case ode::DriveStatus::StepUnderflow: {
            // Near a pinch the f equation loses all accuracy and the controller
            // stalls just before phi changes sign.
            const double phi = res.y[0];
            const double dphi = res.y[1];
            if (phi > 0.0 && phi <= kPinchRatio * res.t) {
                traj.termination = Termination::OrbitCollapse;
                if (dphi < 0.0) {
                    traj.t_stop = res.t + phi / -dphi;
                }
            } else {
                traj.termination = Termination::StepUnderflow;
            }
            break;
        }
    }
    return traj;
}

SampleGrid SampleGrid::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("sample spec must look like lin:N, log:N or step:DT");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string value(spec.substr(colon + 1));
    SampleGrid g;
    if (kind == "lin") {
        g.kind = Kind::Linear;
    } else if (kind == "log") {
        g.kind = Kind::Log;
    } else if (kind == "step") {
        g.kind = Kind::Step;
    } else {
        throw std::invalid_argument("unknown sample grid kind '" + std::string(kind) + "'");
    }
    std::size_t used = 0;
    try {
        g.value = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || !(g.value > 0.0)) {
        throw std::invalid_argument("bad sample grid value '" + value + "'");
    }
    if (g.kind != Kind::Step && (g.value < 2.0 || g.value != std::floor(g.value))) {
        throw std::invalid_argument("sample count must be an integer >= 2");
    }
    return g;
}

std::string SampleGrid::to_string() const {
    char buf[64];
    switch (kind) {
        case Kind::Linear: std::snprintf(buf, sizeof buf, "lin:%.17g", value); break;
        case Kind::Log: std::snprintf(buf, sizeof buf, "log:%.17g", value); break;
        case Kind::Step: std::snprintf(buf, sizeof buf, "step:%.17g", value); break;
    }
    return buf;
}

std::vector<double> SampleGrid::times(double lo, double hi) const {
    std::vector<double> out;
    switch (kind) {
        case Kind::Linear: {
            const auto n = static_cast<std::size_t>(value);
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
            }
            break;
        }
        case Kind::Log: {
            const auto n = static_cast<std::size_t>(value);
            const double llo = std::log(lo);
            const double lhi = std::log(hi);
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(
                    std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1)));
            }
            break;
        }
        case Kind::Step: {
            for (std::size_t i = 0;; ++i) {
                const double t = lo + value * static_cast<double>(i);
                if (t >= hi) {
                    break;
                }
                out.push_back(t);
            }
            out.push_back(hi);
            break;
        }
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace grs
