#pragma once

// Adaptive explicit embedded Runge-Kutta driver shared by the profile and
// phase integrators.
//
// Two pairs are available:
//   - Dormand-Prince 5(4), FSAL, with its native 4th-order continuous extension;
//   - Fehlberg 7(8), propagating the 8th-order solution. It has no continuous
//     extension, so dense output re-takes a single step of the required length
//     from the left end of the accepted step.
//
// Step control is the PI controller of Hairer & Wanner (DOPRI5) on the RMS norm
// of the error scaled by abs_tol + rel_tol * max(|y_old|, |y_new|).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grs::ode {

enum class Method { DormandPrince54, Fehlberg78 };

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::DormandPrince54: return "dopri5";
        case Method::Fehlberg78: return "rkf78";
    }
    return "unknown";
}

inline Method parse_method(std::string_view s) {
    if (s == "dopri5") return Method::DormandPrince54;
    if (s == "rkf78") return Method::Fehlberg78;
    throw std::invalid_argument("unknown integration method '" + std::string(s) +
                                "' (expected dopri5 or rkf78)");
}

struct Tableau {
    int stages;
    int order;           // order of the propagated solution
    int embedded_order;  // order of the error estimator
    std::vector<double> c;
    std::vector<std::vector<double>> a;  // strictly lower triangular, row i has i entries
    std::vector<double> b;               // propagated weights
    std::vector<double> e;               // error weights (b - b_hat)
    bool fsal = false;
    bool has_dense = false;
    std::vector<double> dense_d;  // DOPRI5 dense-output weights d_i
};

inline const Tableau& dormand_prince54() {
    static const Tableau tab = [] {
        Tableau t;
        t.stages = 7;
        t.order = 5;
        t.embedded_order = 4;
        t.c = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
        t.a = {
            {},
            {1.0 / 5},
            {3.0 / 40, 9.0 / 40},
            {44.0 / 45, -56.0 / 15, 32.0 / 9},
            {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
            {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
            {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
        };
        t.b = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
        t.e = {71.0 / 57600,     0.0,          -71.0 / 16695, 71.0 / 1920,
               -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
        t.fsal = true;
        t.has_dense = true;
        t.dense_d = {-12715105075.0 / 11282082432.0, 0.0,
                     87487479700.0 / 32700410799.0,  -10690763975.0 / 1880347072.0,
                     701980252875.0 / 199316789632.0, -1453857185.0 / 822651844.0,
                     69997945.0 / 29380423.0};
        return t;
    }();
    return tab;
}

inline const Tableau& fehlberg78() {
    static const Tableau tab = [] {
        Tableau t;
        t.stages = 13;
        t.order = 8;
        t.embedded_order = 7;
        t.c = {0.0,       2.0 / 27, 1.0 / 9, 1.0 / 6, 5.0 / 12, 1.0 / 2, 5.0 / 6,
               1.0 / 6,   2.0 / 3,  1.0 / 3, 1.0,     0.0,      1.0};
        t.a = {
            {},
            {2.0 / 27},
            {1.0 / 36, 1.0 / 12},
            {1.0 / 24, 0.0, 1.0 / 8},
            {5.0 / 12, 0.0, -25.0 / 16, 25.0 / 16},
            {1.0 / 20, 0.0, 0.0, 1.0 / 4, 1.0 / 5},
            {-25.0 / 108, 0.0, 0.0, 125.0 / 108, -65.0 / 27, 125.0 / 54},
            {31.0 / 300, 0.0, 0.0, 0.0, 61.0 / 225, -2.0 / 9, 13.0 / 900},
            {2.0, 0.0, 0.0, -53.0 / 6, 704.0 / 45, -107.0 / 9, 67.0 / 90, 3.0},
            {-91.0 / 108, 0.0, 0.0, 23.0 / 108, -976.0 / 135, 311.0 / 54, -19.0 / 60, 17.0 / 6,
             -1.0 / 12},
            {2383.0 / 4100, 0.0, 0.0, -341.0 / 164, 4496.0 / 1025, -301.0 / 82, 2133.0 / 4100,
             45.0 / 82, 45.0 / 164, 18.0 / 41},
            {3.0 / 205, 0.0, 0.0, 0.0, 0.0, -6.0 / 41, -3.0 / 205, -3.0 / 41, 3.0 / 41, 6.0 / 41,
             0.0},
            {-1777.0 / 4100, 0.0, 0.0, -341.0 / 164, 4496.0 / 1025, -289.0 / 82, 2193.0 / 4100,
             51.0 / 82, 33.0 / 164, 12.0 / 41, 0.0, 1.0},
        };
        t.b = {0.0,       0.0,       0.0,        0.0,        0.0, 34.0 / 105,  9.0 / 35,
               9.0 / 35,  9.0 / 280, 9.0 / 280,  0.0,        41.0 / 840,      41.0 / 840};
        t.e = {-41.0 / 840, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
               -41.0 / 840, 41.0 / 840, 41.0 / 840};
        return t;
    }();
    return tab;
}

inline const Tableau& tableau(Method m) {
    return m == Method::Fehlberg78 ? fehlberg78() : dormand_prince54();
}

struct Tolerances {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

struct DriveOptions {
    Method method = Method::DormandPrince54;
    Tolerances tol;
    double h_initial = 0.0;      // 0: automatic
    double h_max = 0.0;          // 0: unbounded
    double underflow_ratio = 1e-14;  // step underflow when h < ratio * |t|
    double event_t_tol = 1e-10;
    std::size_t max_steps = 50'000'000;
};

enum class DriveStatus { ReachedEnd, Event, StepUnderflow, NonFinite };

template <std::size_t N>
struct DriveResult {
    DriveStatus status = DriveStatus::ReachedEnd;
    double t = 0.0;             // final time, or the located event time
    std::array<double, N> y{};  // state at t
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

namespace detail {

template <std::size_t N>
bool all_finite(const std::array<double, N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

/// Integrates y' = rhs(t, y, dydt) from t0 to t_end.
///
/// `rhs` returns false when the state is outside the domain of the vector
/// field; such steps are rejected and retried with a smaller step.
///
/// `event` maps a state to a scalar; when it changes sign from positive to
/// non-positive across an accepted step the crossing is located by bisection
/// on the dense output and integration stops there.
///
/// `on_sample(t, y)` receives the initial state, then every requested output
/// time in (t0, t_stop] (strictly increasing). With an empty output list it
/// receives every accepted step instead.
template <std::size_t N, class Rhs, class Event, class Sample>
DriveResult<N> drive(Rhs&& rhs, Event&& event, Sample&& on_sample, double t0,
                     const std::array<double, N>& y0, double t_end,
                     std::span<const double> outputs, const DriveOptions& opt) {
    using Vec = std::array<double, N>;
    const Tableau& tab = tableau(opt.method);
    const int s = tab.stages;

    DriveResult<N> res;
    res.t = t0;
    res.y = y0;

    auto scaled_norm = [&](const Vec& v, const Vec& ya, const Vec& yb) {
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc =
                opt.tol.abs_tol + opt.tol.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            const double r = v[i] / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(N));
    };

    std::vector<Vec> k(static_cast<std::size_t>(s));
    Vec stage{};

    // Takes one trial step; fills k and y_new, returns false if any stage is invalid.
    auto trial = [&](double t, const Vec& y, double h, bool reuse_k0, Vec& y_new, Vec& err) {
        if (!reuse_k0 && !rhs(t, y, k[0])) {
            return false;
        }
        for (int i = 1; i < s; ++i) {
            const auto& ai = tab.a[static_cast<std::size_t>(i)];
            for (std::size_t n = 0; n < N; ++n) {
                double acc = 0.0;
                for (int j = 0; j < i; ++j) {
                    acc += ai[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)][n];
                }
                stage[n] = y[n] + h * acc;
            }
            if (!detail::all_finite(stage) ||
                !rhs(t + tab.c[static_cast<std::size_t>(i)] * h, stage,
                     k[static_cast<std::size_t>(i)])) {
                return false;
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            double acc = 0.0;
            double eacc = 0.0;
            for (int j = 0; j < s; ++j) {
                acc += tab.b[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)][n];
                eacc += tab.e[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)][n];
            }
            y_new[n] = y[n] + h * acc;
            err[n] = h * eacc;
        }
        return detail::all_finite(y_new) && detail::all_finite(err);
    };

    // Dense output over an accepted step [t, t + h]; valid until the next trial.
    struct DenseStep {
        double t, h;
        Vec y0, y1, rcont3, rcont4, rcont5;
    } dense{};

    auto prepare_dense = [&](double t, double h, const Vec& y, const Vec& y_new) {
        dense.t = t;
        dense.h = h;
        dense.y0 = y;
        dense.y1 = y_new;
        if (!tab.has_dense) {
            return;
        }
        // k[6] holds f(t + h, y_new) for the FSAL pair.
        for (std::size_t n = 0; n < N; ++n) {
            const double dy = y_new[n] - y[n];
            const double bspl = h * k[0][n] - dy;
            dense.rcont3[n] = bspl;
            dense.rcont4[n] = dy - h * k[6][n] - bspl;
            double acc = 0.0;
            for (int j = 0; j < s; ++j) {
                acc += tab.dense_d[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)][n];
            }
            dense.rcont5[n] = h * acc;
        }
    };

    std::vector<Vec> k_saved;
    auto dense_eval = [&](double t) -> Vec {
        if (t >= dense.t + dense.h) {
            return dense.y1;
        }
        const double theta = (t - dense.t) / dense.h;
        Vec out{};
        if (tab.has_dense) {
            const double theta1 = 1.0 - theta;
            for (std::size_t n = 0; n < N; ++n) {
                const double dy = dense.y1[n] - dense.y0[n];
                out[n] = dense.y0[n] +
                         theta * (dy + theta1 * (dense.rcont3[n] +
                                                 theta * (dense.rcont4[n] + theta1 * dense.rcont5[n])));
            }
            return out;
        }
        // Re-step from the left end. k[0] is preserved so the FSAL-free pair
        // can reuse it; the other stages are scratch.
        Vec y_new{};
        Vec err{};
        k_saved.assign(k.begin(), k.end());
        const bool ok = trial(dense.t, dense.y0, t - dense.t, true, y_new, err);
        k.assign(k_saved.begin(), k_saved.end());
        if (!ok) {
            // Fall back to linear interpolation; only reachable right at a singular point.
            for (std::size_t n = 0; n < N; ++n) {
                out[n] = dense.y0[n] + theta * (dense.y1[n] - dense.y0[n]);
            }
            return out;
        }
        return y_new;
    };

    double t = t0;
    Vec y = y0;
    on_sample(t, y);

    if (!(t_end > t0)) {
        res.status = DriveStatus::ReachedEnd;
        return res;
    }

    std::size_t next_out = 0;
    while (next_out < outputs.size() && outputs[next_out] <= t0) {
        ++next_out;
    }

    const double span = t_end - t0;
    const double h_max = opt.h_max > 0.0 ? opt.h_max : span;
    const double q_exp = 1.0 / static_cast<double>(std::min(tab.order, tab.embedded_order) + 1);
    const double beta = 0.04;
    const double expo1 = q_exp - 0.75 * beta;
    const double safe = 0.9;
    const double fac_min = 0.2;  // largest decrease 1/5
    const double fac_max = 10.0;
    double fac_old = 1e-4;

    if (!rhs(t, y, k[0]) || !detail::all_finite(k[0])) {
        res.status = DriveStatus::NonFinite;
        return res;
    }

    double h = opt.h_initial;
    if (!(h > 0.0)) {
        // Hairer's starting-step heuristic.
        const double d0 = scaled_norm(y, y, y);
        const double d1 = scaled_norm(k[0], y, y);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        Vec y1{};
        for (std::size_t n = 0; n < N; ++n) {
            y1[n] = y[n] + h0 * k[0][n];
        }
        Vec f1{};
        double h1 = h0;
        if (rhs(t + h0, y1, f1)) {
            Vec df{};
            for (std::size_t n = 0; n < N; ++n) {
                df[n] = f1[n] - k[0][n];
            }
            const double d2 = scaled_norm(df, y, y) / h0;
            const double dm = std::max(d1, d2);
            h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                             : std::pow(0.01 / dm, 1.0 / static_cast<double>(tab.order));
        }
        h = std::min({100.0 * h0, h1, h_max});
    }

    bool k0_valid = true;
    bool last_rejected = false;
    Vec y_new{};
    Vec err{};

    while (true) {
        if (res.accepted + res.rejected >= opt.max_steps) {
            res.status = DriveStatus::StepUnderflow;
            break;
        }
        const bool last = t + h >= t_end;
        if (last) {
            h = t_end - t;
        }
        if (!last && h < opt.underflow_ratio * std::abs(t)) {
            res.status = DriveStatus::StepUnderflow;
            break;
        }
        if (!k0_valid) {
            if (!rhs(t, y, k[0]) || !detail::all_finite(k[0])) {
                res.status = DriveStatus::NonFinite;
                break;
            }
            k0_valid = true;
        }
        if (!trial(t, y, h, true, y_new, err)) {
            ++res.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        const double en = scaled_norm(err, y, y_new);
        if (!std::isfinite(en)) {
            ++res.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        const double fac11 = std::pow(std::max(en, 1e-300), expo1);
        if (en > 1.0) {
            ++res.rejected;
            h /= std::min(1.0 / fac_min, fac11 / safe);
            last_rejected = true;
            continue;
        }

        // Accepted.
        ++res.accepted;
        double fac = fac11 / std::pow(fac_old, beta);
        fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
        fac_old = std::max(en, 1e-4);
        double h_new = std::min(h / fac, h_max);
        if (last_rejected) {
            h_new = std::min(h_new, h);
        }
        last_rejected = false;

        const double t_new = last ? t_end : t + h;
        prepare_dense(t, t_new - t, y, y_new);

        const double g_old = event(y);
        const double g_new = event(y_new);
        if (g_old > 0.0 && !(g_new > 0.0)) {
            double lo = t;
            double hi = t_new;
            while (hi - lo > opt.event_t_tol) {
                const double mid = 0.5 * (lo + hi);
                if (event(dense_eval(mid)) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double t_star = 0.5 * (lo + hi);
            for (; next_out < outputs.size() && outputs[next_out] < t_star; ++next_out) {
                if (outputs[next_out] > t) {
                    on_sample(outputs[next_out], dense_eval(outputs[next_out]));
                }
            }
            if (outputs.empty() && lo > t) {
                on_sample(lo, dense_eval(lo));
            }
            res.status = DriveStatus::Event;
            res.t = t_star;
            res.y = dense_eval(t_star);
            return res;
        }

        if (outputs.empty()) {
            on_sample(t_new, y_new);
        } else {
            for (; next_out < outputs.size() && outputs[next_out] <= t_new; ++next_out) {
                const double to = outputs[next_out];
                on_sample(to, to == t_new ? y_new : dense_eval(to));
            }
        }

        t = t_new;
        y = y_new;
        if (tab.fsal) {
            k[0] = k[static_cast<std::size_t>(s - 1)];
        } else {
            k0_valid = false;
        }
        h = h_new;
        if (last) {
            res.status = DriveStatus::ReachedEnd;
            break;
        }
    }

    res.t = t;
    res.y = y;
    return res;
}

}  // namespace grs::ode
