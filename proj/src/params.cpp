#include "grs/params.hpp"

#include <stdexcept>
#include <string>

namespace grs {

SolitonParams SolitonParams::from_q(double q) {
    SolitonParams p;
    p.q = q;
    return p;
}

SolitonParams SolitonParams::from_ell(double ell) {
    SolitonParams p;
    p.ell = ell;
    p.q = q_from_ell(ell);
    return p;
}

ode::DriveOptions SolitonParams::drive_options() const {
    ode::DriveOptions opt;
    opt.method = method;
    opt.tol = {abs_tol, rel_tol};
    return opt;
}

void SolitonParams::validate() const {
    if (!std::isfinite(q)) {
        throw std::invalid_argument("q must be finite");
    }
    if (ell) {
        if (!std::isfinite(*ell)) {
            throw std::invalid_argument("ell must be finite");
        }
        if (std::abs(q - q_from_ell(*ell)) > 1e-12 * std::max(1.0, std::abs(q))) {
            throw std::invalid_argument("q is inconsistent with ell");
        }
    }
    if (!(k == 0.0 || std::abs(k - kTorsionSqrt2) < 1e-15)) {
        throw std::invalid_argument("k must be 0 or sqrt(2), got " + std::to_string(k));
    }
    if (series_order < 2) {
        throw std::invalid_argument("series order must be at least 2");
    }
    if (!(eps_handoff > 0.0 && eps_handoff <= 0.1)) {
        throw std::invalid_argument("eps_handoff must lie in (0, 0.1]");
    }
    if (!(abs_tol > 0.0 && rel_tol >= 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (!(t_max > eps_handoff)) {
        throw std::invalid_argument("t_max must exceed eps_handoff");
    }
}

}  // namespace grs
