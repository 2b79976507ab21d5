#include "grs/seed.hpp"

#include <cmath>
#include <string>

namespace grs {

Mat2 l_matrix(int n) {
    const double nn = static_cast<double>(n);
    const double s = 2.0 * nn + 1.0;
    const double w_a = 1.0 / (2.0 * (nn + 1.0) * s);
    const double w_b = 1.0 / s;
    // dA|P(0) and dB/dQ|(P(0), Q(0)).
    constexpr Mat2 dA{{{-2.0, 0.0}, {-4.0, 0.0}}};
    constexpr Mat2 dB{{{-4.0, 1.0}, {-4.0, 2.0}}};
    Mat2 L{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            L[i][j] = (i == j ? 1.0 : 0.0) - w_a * dA[i][j] - w_b * dB[i][j];
        }
    }
    return L;
}

std::array<TruncSeries, 2> reduced_residual_series(const TruncSeries& a, const TruncSeries& f,
                                                   double c2) {
    const std::size_t n = a.order();
    const TruncSeries one = TruncSeries::constant(1.0, n);
    const TruncSeries ainv = reciprocal(a);
    const TruncSeries ainv2 = ainv * ainv;
    const TruncSeries da = differentiate(a);
    const TruncSeries dda = differentiate(da);
    const TruncSeries df = differentiate(f);
    const TruncSeries ddf = differentiate(df);
    const TruncSeries e2f = exp_series(2.0 * f);

    const TruncSeries a1 = ainv - a;
    const TruncSeries a2 = 2.0 * (ainv2 - one);
    const TruncSeries b1 = a * df - 4.0 * da;
    const TruncSeries b2 = 2.0 * (df - 2.0 * (da * ainv));
    const TruncSeries c1 = da * df - da * da * ainv - c2 * (a * e2f);
    const TruncSeries c2s = 2.0 * (da * df * ainv) - 2.0 * (da * da * ainv2) - c2 * e2f;

    TruncSeries e1 = shift_up(dda, 2) - a1 - shift_up(b1, 1) - shift_up(c1, 2);
    TruncSeries e2 = shift_up(ddf, 2) - a2 - shift_up(b2, 1) - shift_up(c2s, 2);
    return {e1.truncated(n), e2.truncated(n)};
}

SeedExpansion compute_seed(const SolitonParams& params) {
    params.validate();
    const auto order = static_cast<std::size_t>(params.series_order);
    const double q = params.q;
    const double c2 = params.c2();

    TruncSeries a(order);
    TruncSeries f(order);
    a[0] = 1.0;
    // Degree 2 is the free level: phi'''(0) = 6 a_2 = q and f''(0) = 2q + c^2.
    a[2] = q / 6.0;
    f[2] = 0.5 * (2.0 * q + c2);

    for (std::size_t m = 4; m <= order; m += 2) {
        const int level = static_cast<int>(m / 2) - 1;
        const Mat2 L = l_matrix(level);
        const double d = det(L);
        if (!(std::abs(d) > 1e-12)) {
            throw SingularLevel("L matrix at level " + std::to_string(level) + " is singular");
        }
        // With p_m = 0 the degree-m residual is minus the right-hand side d_{2n}.
        const auto e = reduced_residual_series(a, f, c2);
        const double md = static_cast<double>(m);
        const double r0 = -e[0][m] / (md * (md - 1.0));
        const double r1 = -e[1][m] / (md * (md - 1.0));
        a[m] = (L[1][1] * r0 - L[0][1] * r1) / d;
        f[m] = (L[0][0] * r1 - L[1][0] * r0) / d;
    }
    return SeedExpansion(std::move(a), std::move(f), q, c2);
}

SeedExpansion::SeedExpansion(TruncSeries a_series, TruncSeries f_series, double q, double c2)
    : a_(std::move(a_series)), f_(std::move(f_series)), q_(q), c2_(c2) {
    da_ = differentiate(a_);
    dda_ = differentiate(da_);
    df_ = differentiate(f_);
    ddf_ = differentiate(df_);
    // 1 - phi' = 1 - (t a)' = -sum_{m>=1} (m+1) a_m t^m.
    omd_ = TruncSeries(a_.order());
    for (std::size_t m = 1; m <= a_.order(); ++m) {
        omd_[m] = -static_cast<double>(m + 1) * a_[m];
    }
    // (1/a - 1)/s integrates termwise to sum g_m t^m / m.
    const TruncSeries g = reciprocal(a_);
    radial_tail_ = TruncSeries(a_.order());
    for (std::size_t m = 1; m <= a_.order(); ++m) {
        radial_tail_[m] = g[m] / static_cast<double>(m);
    }
}

SeedJet SeedExpansion::jet(double t) const {
    const double a = eval_horner(a_, t);
    const double da = eval_horner(da_, t);
    const double dda = eval_horner(dda_, t);
    SeedJet j;
    j.t = t;
    j.phi = t * a;
    j.dphi = a + t * da;
    j.ddphi = 2.0 * da + t * dda;
    j.one_minus_dphi = eval_horner(omd_, t);
    j.f = eval_horner(f_, t);
    j.df = eval_horner(df_, t);
    j.ddf = eval_horner(ddf_, t);
    return j;
}

double SeedExpansion::radial_parameter(double t) const {
    return std::log(t) + eval_horner(radial_tail_, t);
}

SolitonState eval_seed(const SeedExpansion& seed, double t) {
    const SeedJet j = seed.jet(t);
    return {t, j.phi, j.dphi, j.f, j.df};
}

std::pair<double, double> seed_residual(const SeedExpansion& seed, double t) {
    const SeedJet j = seed.jet(t);
    const double one_minus_dphi_sq = j.one_minus_dphi * (2.0 - j.one_minus_dphi);
    const double e2f = seed.c2() * std::exp(2.0 * j.f);
    const double r_phi = j.ddphi - (one_minus_dphi_sq / j.phi + j.dphi * j.df - j.phi * e2f);
    const double r_f = j.ddf - (2.0 * one_minus_dphi_sq / (j.phi * j.phi) +
                                2.0 * j.dphi * j.df / j.phi - e2f);
    return {r_phi, r_f};
}

}  // namespace grs
