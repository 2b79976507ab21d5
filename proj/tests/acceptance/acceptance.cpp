// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance PATH_TO_grs_soliton
//
// Exit status is 0 when every criterion passes, or fails only where listed in
// kKnownUnattainable (see README). A listed criterion that starts passing is
// also an error, so the list cannot go stale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grs/geometry.hpp"
#include "grs/invariants.hpp"
#include "grs/phase.hpp"
#include "grs/profile.hpp"
#include "grs/seed.hpp"

using namespace grs;

namespace {

// phi ~ sqrt(2t / |6q+5|) is contradicted by phi^2 / t -> 2 / sqrt|6q+5|.
const std::set<int> kKnownUnattainable{5};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
    int id;
    bool pass;
    std::string detail;
};

std::vector<Line> g_lines;

void report(int id, bool pass, const std::string& detail) {
    g_lines.push_back({id, pass, detail});
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

constexpr double kS2 = std::numbers::sqrt2;

void criterion_brf() {
    const auto t0 = Clock::now();
    SolitonParams p = SolitonParams::from_q(-0.5);
    p.t_max = 10.0;
    const Trajectory tr = integrate(p, compute_seed(p));
    double phi_err = 0.0;
    double f_err = 0.0;
    for (const SolitonState& s : tr.samples) {
        if (s.t >= 1e-3 && s.t <= 3.0) {
            phi_err = std::max(phi_err, std::abs(s.phi - kS2 * std::sin(s.t / kS2)));
            f_err = std::max(f_err, std::abs(s.f));
        }
    }
    const bool collapsed = tr.termination == Termination::OrbitCollapse;
    const double t_err = std::abs(tr.t_stop - std::numbers::pi * kS2);
    const double secs = seconds_since(t0);
    const bool pass = phi_err <= 1e-8 && f_err <= 1e-8 && collapsed && t_err <= 1e-6 && secs < 1.0;
    report(1, pass,
           "exact solution: max|phi err| " + fmt("%.2e", phi_err) + ", max|f| " +
               fmt("%.2e", f_err) + " (<= 1e-8); collapse " + (collapsed ? "at " : "NOT detected, t ") +
               fmt("%.10f", tr.t_stop) + ", |t - pi sqrt2| " + fmt("%.2e", t_err) +
               " (<= 1e-6); " + fmt("%.3f", secs) + " s (< 1 s)");
}

void criterion_seed() {
    const SeedExpansion brf = compute_seed(SolitonParams::from_q(-0.5));
    double coeff_err = 0.0;
    double term = 1.0;
    for (int m = 0; m <= 24; ++m) {
        double expected = 0.0;
        if (m % 2 == 0) {
            if (m > 0) {
                term /= -2.0 * m * (m + 1);
            }
            expected = term;
        }
        coeff_err = std::max(coeff_err, std::abs(brf.a_series().coeff(m) - expected));
        coeff_err = std::max(coeff_err, std::abs(brf.f_series().coeff(m)));
    }

    // Odd truncation degrees at t = 0.2, where truncation dominates rounding.
    double worst_dev = 0.0;
    std::string exps;
    for (double q : {-47.0 / 12.0, -4.0}) {
        for (int n : {7, 9, 11}) {
            SolitonParams p = SolitonParams::from_q(q);
            p.series_order = n;
            const SeedExpansion seed = compute_seed(p);
            auto size = [&](double t) {
                const auto [a, b] = seed_residual(seed, t);
                return std::max(std::abs(a), std::abs(b));
            };
            const double e = std::log10(size(0.2) / size(0.02));
            worst_dev = std::max(worst_dev, std::abs(e - (n - 1)));
            exps += fmt(" %.2f", e);
        }
    }
    const bool pass = coeff_err <= 1e-12 && worst_dev <= 0.5;
    report(2, pass,
           "seed: max coeff err vs closed form " + fmt("%.2e", coeff_err) +
               " (<= 1e-12); residual exponents for N = 7, 9, 11 at q = -47/12, -4:" + exps +
               ", max |exp - (N-1)| " + fmt("%.2f", worst_dev) + " (<= 0.5)");
}

void criterion_conservation() {
    const auto t0 = Clock::now();
    SolitonParams p = SolitonParams::from_ell(0.0);
    p.t_max = 100.0;
    const ConservationSummary loose = summarize_conservation(integrate(p, compute_seed(p)));
    p.abs_tol = p.rel_tol = 1e-12;
    const ConservationSummary tight = summarize_conservation(integrate(p, compute_seed(p)));
    const double secs = seconds_since(t0);
    const double ratio = loose.max_drift2 / tight.max_drift2;
    const bool pass = loose.max_drift2 <= 1e-6 && ratio >= 10.0 && secs < 5.0;
    report(3, pass,
           "conservation at ell = 0: max|q2 - (6q+5)| " + fmt("%.2e", loose.max_drift2) +
               " (<= 1e-6) at tol 1e-10, " + fmt("%.2e", tight.max_drift2) +
               " at tol 1e-12, ratio " + fmt("%.1f", ratio) + " (>= 10); " + fmt("%.3f", secs) +
               " s (< 5 s)");
}

void criterion_theorem() {
    const auto t0 = Clock::now();
    const std::set<std::string> required{"reached_t_max", "phi_positive",    "dphi_positive",
                                         "dphi_below_one", "concave",        "f_negative",
                                         "f_decreasing",  "k_rad_positive", "k_tan_positive",
                                         "phi_exp_f_bound"};
    bool all = true;
    std::string detail;
    for (double ell : {-1.0, 0.0, 1.0, 2.0}) {
        SolitonParams p = SolitonParams::from_ell(ell);
        p.t_max = 200.0;
        const Trajectory tr = integrate(p, compute_seed(p));
        const PropertyReport r = check_propositions(tr, p);
        std::set<std::string> seen;
        std::string failed;
        double est_margin = 0.0;
        for (const PropositionCheck& c : r.checks) {
            if (!required.count(c.name)) {
                continue;
            }
            seen.insert(c.name);
            if (!c.pass || !c.asserted) {
                failed += " " + c.name;
            }
            if (c.name == "phi_exp_f_bound") {
                est_margin = c.margin;
            }
        }
        const bool ok = failed.empty() && seen == required;
        all = all && ok;
        detail += fmt(" ell=%g:", ell) + (ok ? "ok" : "failed" + failed) +
                  fmt(" (bound slack %.3f)", est_margin);
    }
    const double secs = seconds_since(t0);
    all = all && secs < 30.0;
    report(4, all, "theorem checks on (eps, 200]:" + detail + "; " + fmt("%.3f", secs) + " s (< 30 s)");
}

void criterion_asymptotics() {
    SolitonParams p = SolitonParams::from_ell(0.0);
    p.t_max = 1e4;
    const Trajectory tr = integrate(p, compute_seed(p));
    const auto fit = fit_asymptotics(tr, p);
    if (!fit) {
        report(5, false, "no asymptotic fit (run stopped at t = " + fmt("%g", tr.t_stop) + ")");
        return;
    }
    const double fp_err = std::abs(fit->fprime_limit + std::sqrt(18.5));
    const bool r_phi_ok = fit->r_phi_err <= 0.05;
    const bool pass = r_phi_ok && fit->r_f_err <= 0.01 && fp_err <= 1e-3 && fit->h_decay_slope < 0.0;
    report(5, pass,
           "asymptotics on [" + fmt("%g", fit->t_lo) + ", " + fmt("%g", fit->t_hi) +
               "]: |phi^2 |6q+5|/(2t) - 1| " + fmt("%.4f", fit->r_phi_err) + " (<= 0.05)" +
               (r_phi_ok ? "" : " FAILS") + ", |-f/(sqrt|6q+5| t) - 1| " +
               fmt("%.2e", fit->r_f_err) + " (<= 0.01), |f'(t_max) + sqrt 18.5| " +
               fmt("%.2e", fp_err) + " (<= 1e-3), log h_density slope " +
               fmt("%.4f", fit->h_decay_slope) + " (< 0)");
    std::printf("      note: |phi^2 sqrt|6q+5|/(2t) - 1| = %.2e on the same window\n",
                fit->r_phi_sqrt_err);
}

void criterion_fingerprint() {
    double worst_q = 0.0;
    double worst_pair = 0.0;
    for (double ell : {-1.0, 0.0, 1.0, 2.0}) {
        const SolitonParams p = SolitonParams::from_ell(ell);
        const auto [neg_rad, neg_tan] = curvature_limit_q(compute_seed(p), p.eps_handoff);
        worst_q = std::max({worst_q, std::abs(neg_rad - p.q), std::abs(neg_tan - p.q)});
        worst_pair = std::max(worst_pair, std::abs(neg_rad - neg_tan));
    }
    const bool pass = worst_q <= 1e-8 && worst_pair <= 1e-10;
    report(6, pass,
           "curvature limits for ell = -1, 0, 1, 2: max |lim - q| " + fmt("%.2e", worst_q) +
               " (<= 1e-8), max |lim K_rad - lim K_tan| " + fmt("%.2e", worst_pair) +
               " (<= 1e-10)");
}

void criterion_phase() {
    SolitonParams p = SolitonParams::from_ell(0.0);
    p.t_max = 100.0;
    const SeedExpansion seed = compute_seed(p);
    const Trajectory tr = integrate(p, seed);
    const PhaseTrajectory ph = integrate_phase(p, seed, tr.radial);
    const CrossValidation cv = cross_validate(tr, ph);
    const bool pass = cv.compared == tr.samples.size() && cv.max_deviation <= 1e-6 &&
                      cv.max_first_integral_drift <= 1e-8;
    report(7, pass,
           "phase cross-check at ell = 0 over " + std::to_string(cv.compared) +
               " points: max componentwise deviation " + fmt("%.2e", cv.max_deviation) +
               " (<= 1e-6), first-integral drift " + fmt("%.2e", cv.max_first_integral_drift) +
               " (<= 1e-8)");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_determinism(const std::string& exe) {
    if (exe.empty()) {
        report(8, false, "no path to grs_soliton given");
        return;
    }
    const std::filesystem::path dir = std::filesystem::temp_directory_path();
    const std::filesystem::path a = dir / "grs_acceptance_a.csv";
    const std::filesystem::path b = dir / "grs_acceptance_b.csv";
    const std::string base = "\"" + exe + "\" solve --ell 0 --quiet --out ";
    const int ca = std::system((base + "\"" + a.string() + "\"").c_str());
    const int cb = std::system((base + "\"" + b.string() + "\"").c_str());
    const std::string sa = slurp(a);
    const std::string sb = slurp(b);
    const bool pass = ca == 0 && cb == 0 && !sa.empty() && sa == sb;
    report(8, pass,
           "two runs of `solve --ell 0`: " + std::to_string(sa.size()) + " and " +
               std::to_string(sb.size()) + " bytes, " + (sa == sb ? "identical" : "different"));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : "";
    criterion_brf();
    criterion_seed();
    criterion_conservation();
    criterion_theorem();
    criterion_asymptotics();
    criterion_fingerprint();
    criterion_phase();
    criterion_determinism(exe);

    int passed = 0;
    bool ok = true;
    for (const Line& l : g_lines) {
        passed += l.pass ? 1 : 0;
        const bool known = kKnownUnattainable.count(l.id) > 0;
        if (l.pass == known) {
            ok = false;
            if (known) {
                std::printf("criterion %d is listed as unattainable but passed\n", l.id);
            }
        }
    }
    std::printf("%d/%zu criteria pass", passed, g_lines.size());
    for (int id : kKnownUnattainable) {
        std::printf("; criterion %d is unattainable as stated (see README)", id);
    }
    std::printf("\n");
    return ok ? 0 : 1;
}
