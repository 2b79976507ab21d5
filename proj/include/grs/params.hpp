#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "grs/ode.hpp"

namespace grs {

/// Torsion constant in the normalization k^2 = 2.
inline constexpr double kTorsionSqrt2 = std::numbers::sqrt2;

/// Threshold below which the family is known to be complete: q < -35/12.
inline constexpr double kCompletenessThreshold = -35.0 / 12.0;

/// Family parameter q_ell = -35/12 - exp(-ell).
inline double q_from_ell(double ell) { return kCompletenessThreshold - std::exp(-ell); }

struct SolitonParams {
    double q = -47.0 / 12.0;          // phi'''(0)
    std::optional<double> ell;        // when set, q == q_from_ell(*ell)
    double k = kTorsionSqrt2;         // 0 (Ricci soliton) or sqrt(2)
    int series_order = 24;            // inclusive truncation degree of the seed
    double eps_handoff = 1e-3;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double t_max = 100.0;
    ode::Method method = ode::Method::DormandPrince54;

    static SolitonParams from_q(double q);
    static SolitonParams from_ell(double ell);

    /// c^2 = k^2 / 2, the coefficient of the e^{2f} terms.
    double c2() const { return 0.5 * k * k; }
    bool torsion() const { return k != 0.0; }

    /// Value of the conserved quantity: 6q + 5c^2 (= 6q + 5 when k^2 = 2).
    double conserved_target() const { return 6.0 * q + 5.0 * c2(); }

    /// True in the regime where the completeness theorem applies.
    bool in_theorem_regime() const { return torsion() && q < kCompletenessThreshold; }

    ode::DriveOptions drive_options() const;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

}  // namespace grs
