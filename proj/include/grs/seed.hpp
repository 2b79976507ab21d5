#pragma once

// Formal even power-series solution at the singular origin.
//
// Writing phi = t a(t), the pair (a, f) is even with a(0) = 1, f(0) = 0 and
// satisfies
//
//   t^2 a'' = A_1(a) + t B_1(a, f') + t^2 C_1,
//   t^2 f'' = A_2(a) + t B_2(a, a', f') + t^2 C_2,
//
// with A = ((1 - a^2)/a, 2(1 - a^2)/a^2). Matching the coefficient of t^m
// gives m(m-1) L_{m/2-1} p_m = (terms of lower degree), where p_m is the
// pair of degree-m coefficients. L_0 is singular; that level is fixed by the
// free parameter q = phi'''(0) instead.

#include <array>
#include <stdexcept>
#include <utility>

#include "grs/params.hpp"
#include "grs/series.hpp"
#include "grs/state.hpp"

namespace grs {

using Mat2 = std::array<std::array<double, 2>, 2>;

class SingularLevel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// L_{2n} = I - dA/(2(n+1)(2n+1)) - (dB/dQ)/(2n+1) at P(0) = (1, 0).
Mat2 l_matrix(int n);

inline double det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

/// Value and first two derivatives of phi and f at a point, evaluated from
/// the series. one_minus_dphi is evaluated directly from its own series so
/// that 1 - phi' keeps full relative precision near t = 0.
struct SeedJet {
    double t = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    double ddphi = 0.0;
    double one_minus_dphi = 0.0;
    double f = 0.0;
    double df = 0.0;
    double ddf = 0.0;
};

class SeedExpansion {
public:
    SeedExpansion(TruncSeries a_series, TruncSeries f_series, double q, double c2);

    const TruncSeries& a_series() const { return a_; }
    const TruncSeries& f_series() const { return f_; }
    double q() const { return q_; }
    double c2() const { return c2_; }
    int order() const { return static_cast<int>(a_.order()); }

    SeedJet jet(double t) const;

    /// r(t) = log t + int_0^t (1/phi(s) - 1/s) ds, a primitive of 1/phi.
    double radial_parameter(double t) const;

private:
    TruncSeries a_, f_;
    double q_, c2_;
    TruncSeries da_, dda_, omd_, df_, ddf_;
    TruncSeries radial_tail_;
};

/// Residual series (E_1, E_2) of the t^2-multiplied system in (a, f).
std::array<TruncSeries, 2> reduced_residual_series(const TruncSeries& a, const TruncSeries& f,
                                                   double c2);

SeedExpansion compute_seed(const SolitonParams& params);

/// State at the handoff point: (t, t a, a + t a', f, f').
SolitonState eval_seed(const SeedExpansion& seed, double t);

/// Residuals (r_phi, r_f) of the profile system at t, from the series.
std::pair<double, double> seed_residual(const SeedExpansion& seed, double t);

}  // namespace grs
