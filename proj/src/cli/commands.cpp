#include "grs/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "grs/cli/output.hpp"
#include "grs/geometry.hpp"
#include "grs/invariants.hpp"
#include "grs/phase.hpp"
#include "grs/seed.hpp"

namespace grs::cli {

using nlohmann::json;

int exit_code_for(Termination t) {
    switch (t) {
        case Termination::ReachedTMax: return kExitOk;
        case Termination::OrbitCollapse: return kExitCollapse;
        case Termination::StepUnderflow:
        case Termination::NonFinite: return kExitSolver;
    }
    return kExitSolver;
}

namespace {

json check_entry(const char* name, double value, double tolerance) {
    return {{"name", name},
            {"value", std::isfinite(value) ? json(value) : json(nullptr)},
            {"tolerance", tolerance},
            {"pass", value <= tolerance}};
}

// Opens cfg.out when set, otherwise hands back the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open output file '" + path + "'");
            }
            os_ = &file_;
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

}  // namespace

SolitonParams brf_params(const RunConfig& cfg) {
    SolitonParams p = cfg.params;
    p.q = -0.5;
    p.ell.reset();
    p.k = kTorsionSqrt2;
    p.t_max = 10.0;
    return p;
}

json brf_oracle_checks(const RunConfig& cfg) {
    const SolitonParams p = brf_params(cfg);
    p.validate();
    const double s2 = std::numbers::sqrt2;
    const double t_cmp = 3.0;

    json checks = json::array();
    const SeedExpansion seed = compute_seed(p);

    double coeff_err = 0.0;
    double term = 1.0;  // (-1)^j / (2^j (2j+1)!)
    for (int m = 0; m <= seed.order(); ++m) {
        double expected = 0.0;
        if (m % 2 == 0) {
            if (m > 0) {
                term /= -2.0 * m * (m + 1);
            }
            expected = term;
        }
        coeff_err = std::max(coeff_err, std::abs(seed.a_series().coeff(m) - expected));
        coeff_err = std::max(coeff_err, std::abs(seed.f_series().coeff(m)));
    }
    checks.push_back(check_entry("seed_coefficients", coeff_err, 1e-12));

    const auto [r_phi, r_f] = seed_residual(seed, p.eps_handoff);
    checks.push_back(check_entry("seed_residual", std::max(std::abs(r_phi), std::abs(r_f)), 1e-12));

    const Trajectory traj = integrate(p, seed);
    double phi_err = 0.0;
    double f_err = 0.0;
    double curv_err = 0.0;
    double norm_err = 0.0;
    double q2_err = 0.0;
    std::vector<double> radial;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const SolitonState& s = traj.samples[i];
        if (s.t > t_cmp) {
            break;
        }
        phi_err = std::max(phi_err, std::abs(s.phi - s2 * std::sin(s.t / s2)));
        f_err = std::max({f_err, std::abs(s.f), std::abs(s.df)});
        const GeometrySample g = geometry_at(s, p.k);
        curv_err = std::max({curv_err, std::abs(g.k_rad - 0.5), std::abs(g.k_tan - 0.5)});
        norm_err = std::max(norm_err, std::abs(g.normH2 - 12.0));
        q2_err = std::max(q2_err, conserved_at(s, p).drift2);
        radial.push_back(traj.radial[i]);
    }
    checks.push_back(check_entry("profile_phi", phi_err, 1e-8));
    checks.push_back(check_entry("profile_f", f_err, 1e-8));
    const double collapse_err = traj.termination == Termination::OrbitCollapse
                                    ? std::abs(traj.t_stop - std::numbers::pi * s2)
                                    : std::numeric_limits<double>::infinity();
    checks.push_back(check_entry("collapse_time", collapse_err, 1e-6));
    checks.push_back(check_entry("curvatures", curv_err, 1e-6));
    checks.push_back(check_entry("normH2", norm_err, 1e-7));
    checks.push_back(check_entry("conserved_q2", q2_err, 1e-6));

    // Closed form in r: tan(u/2) = e^r / (2 sqrt 2), u = t / sqrt 2.
    const PhaseTrajectory ph = integrate_phase(p, seed, radial);
    double phase_err = 0.0;
    for (const PhaseState& s : ph.samples) {
        const double u = 2.0 * std::atan(std::exp(s.r) / (2.0 * s2));
        phase_err = std::max({phase_err, std::abs(s.x - std::cos(u)),
                              std::abs(s.y - 2.0 * std::cos(u)), std::abs(s.z - s2 * std::sin(u))});
    }
    checks.push_back(check_entry("phase_closed_form", phase_err, 1e-8));
    return checks;
}

json verify_report(const RunConfig& cfg) {
    const SolitonParams& p = cfg.params;
    p.validate();
    if (!cfg.observe_only && !p.in_theorem_regime()) {
        throw std::invalid_argument(
            "verify asserts the theorem only for k = sqrt2 and q < -35/12; pass --observe-only");
    }
    const SeedExpansion seed = compute_seed(p);
    const Trajectory traj = cfg.grid_set ? integrate(p, seed, cfg.sample_times())
                                         : integrate(p, seed);

    PropertyReport props = check_propositions(traj, p);
    if (cfg.observe_only) {
        props.asserted = false;
        for (PropositionCheck& c : props.checks) {
            c.asserted = false;
        }
    }
    const auto fit = fit_asymptotics(traj, p);
    const auto [neg_rad, neg_tan] = curvature_limit_q(seed, p.eps_handoff);
    const PhaseTrajectory ph = integrate_phase(p, seed, traj.radial);
    const CrossValidation cv = cross_validate(traj, ph);

    json j;
    j["params"] = to_json(p);
    j["mode"] = props.asserted ? "asserted" : "observe";
    j["termination"] = std::string(termination_name(traj.termination));
    j["t_stop"] = traj.t_stop;
    j["samples"] = traj.samples.size();
    j["conservation"] = to_json(summarize_conservation(traj));
    j["propositions"] = to_json(props);
    if (props.linear_bound) {
        j["linear_bound"] = {{"T", props.linear_bound->T},
                             {"a", props.linear_bound->a},
                             {"M", props.linear_bound->M}};
    }
    j["asymptotics"] = to_json(fit);
    j["curvature_limits"] = {{"neg_k_rad", neg_rad}, {"neg_k_tan", neg_tan}};
    j["phase"] = to_json(cv);
    j["oracle_checks"] = json::array();

    bool pass = props.all_pass();
    if (const PropositionCheck* bad = props.first_failure()) {
        j["violation"] = {{"name", bad->name}, {"t", bad->worst_t}, {"margin", bad->margin}};
    }
    j["pass"] = pass;
    return j;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SolitonParams& p = cfg.params;
    p.validate();
    const SeedExpansion seed = compute_seed(p);
    const Trajectory traj = integrate(p, seed, cfg.sample_times());
    Sink sink(cfg.out, out);
    write_csv(sink.get(), traj);
    if (cfg.verbosity > 0) {
        const ConservationSummary c = summarize_conservation(traj);
        err << "q=" << format_real(p.q) << " termination=" << termination_name(traj.termination)
            << " t_stop=" << format_real(traj.t_stop) << " steps=" << traj.accepted_steps
            << " max_drift2=" << format_real(c.max_drift2) << '\n';
        if (traj.termination == Termination::OrbitCollapse) {
            err << "collapse at t = " << format_real(traj.t_stop) << '\n';
        }
    }
    return exit_code_for(traj.termination);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    json j;
    if (cfg.oracle) {
        j["params"] = to_json(brf_params(cfg));
        j["mode"] = "oracle";
        j["oracle"] = "brf";
        j["oracle_checks"] = brf_oracle_checks(cfg);
        bool pass = true;
        for (const json& c : j["oracle_checks"]) {
            pass = pass && c["pass"].get<bool>();
        }
        j["pass"] = pass;
    } else {
        j = verify_report(cfg);
    }
    Sink sink(cfg.out, out);
    sink.get() << j.dump(2) << '\n';
    const bool pass = j["pass"].get<bool>();
    if (!pass && cfg.verbosity > 0) {
        if (j.contains("violation")) {
            err << "check '" << j["violation"]["name"].get<std::string>() << "' failed at t = "
                << format_real(j["violation"]["t"].get<double>()) << '\n';
        } else {
            err << "verification failed\n";
        }
    }
    return pass ? kExitOk : kExitChecks;
}

namespace {

struct MemberResult {
    double ell = 0.0;
    json record;
    bool pass = false;
};

MemberResult run_member(const RunConfig& cfg, double ell, const std::filesystem::path& dir,
                        std::size_t index) {
    MemberResult m;
    m.ell = ell;
    json& r = m.record;
    r["ell"] = ell;
    try {
        SolitonParams p = cfg.params;
        p.ell = ell;
        p.q = q_from_ell(ell);
        p.validate();
        r["q"] = p.q;
        r["f_dd0"] = 2.0 * p.q + p.c2();

        const SeedExpansion seed = compute_seed(p);
        const auto [neg_rad, neg_tan] = curvature_limit_q(seed, p.eps_handoff);
        r["neg_k_rad_limit"] = neg_rad;
        r["neg_k_tan_limit"] = neg_tan;
        const bool identity = std::abs(neg_tan - p.q) <= 1e-8 && std::abs(neg_rad - p.q) <= 1e-8 &&
                              std::abs(neg_rad - neg_tan) <= 1e-10;
        r["fingerprint_identity"] = identity;

        RunConfig member = cfg;
        member.params = p;
        const Trajectory sampled = integrate(p, seed, member.sample_times());
        const std::string name = "member_" + std::to_string(index) + ".csv";
        {
            std::ofstream csv(dir / name, std::ios::binary);
            if (!csv) {
                throw std::runtime_error("cannot write " + (dir / name).string());
            }
            write_csv(csv, sampled);
        }
        r["csv"] = name;

        const Trajectory traj = integrate(p, seed);
        const PropertyReport props = check_propositions(traj, p);
        r["termination"] = std::string(termination_name(traj.termination));
        r["t_stop"] = traj.t_stop;
        r["conservation"] = to_json(summarize_conservation(traj));
        r["propositions"] = to_json(props);
        const PropositionCheck* bad = props.first_failure();
        r["failed_check"] = bad ? json(bad->name) : json(nullptr);
        m.pass = identity && bad == nullptr && traj.termination == Termination::ReachedTMax;
    } catch (const std::exception& e) {
        r["error"] = e.what();
        m.pass = false;
    }
    r["pass"] = m.pass;
    return m;
}

}  // namespace

int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.ells.empty()) {
        err << "family: empty ell list (use --ells or --ell-range)\n";
        return kExitUsage;
    }
    cfg.params.validate();
    const std::filesystem::path dir = cfg.out.empty() ? "family_out" : cfg.out;
    std::filesystem::create_directories(dir);

    std::vector<MemberResult> results(cfg.ells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < results.size(); i = next++) {
            results[i] = run_member(cfg, cfg.ells[i], dir, i);
        }
    };
    const std::size_t n_threads = std::min(worker_count(), results.size());
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    json members = json::array();
    bool all_pass = true;
    std::vector<double> prints;
    for (const MemberResult& m : results) {
        members.push_back(m.record);
        all_pass = all_pass && m.pass;
        if (m.record.contains("neg_k_tan_limit")) {
            prints.push_back(m.record["neg_k_tan_limit"].get<double>());
        }
    }
    std::sort(prints.begin(), prints.end());
    bool distinct = prints.size() == results.size();
    for (std::size_t i = 1; i < prints.size(); ++i) {
        distinct = distinct && prints[i] - prints[i - 1] > 1e-8;
    }

    json j;
    j["params"] = to_json(cfg.params);
    j["samples"] = cfg.grid.to_string();
    j["members"] = members;
    j["distinct_fingerprints"] = distinct;
    j["pass"] = all_pass && distinct;
    {
        std::ofstream f(dir / "family.json", std::ios::binary);
        f << j.dump(2) << '\n';
    }

    out << "ell,q,neg_k_tan_limit,f_dd0,pass\n";
    for (const MemberResult& m : results) {
        const json& r = m.record;
        out << format_real(m.ell) << ','
            << (r.contains("q") ? format_real(r["q"].get<double>()) : "nan") << ','
            << (r.contains("neg_k_tan_limit") ? format_real(r["neg_k_tan_limit"].get<double>())
                                              : "nan")
            << ',' << (r.contains("f_dd0") ? format_real(r["f_dd0"].get<double>()) : "nan") << ','
            << (m.pass ? "yes" : "no") << '\n';
    }
    if (!distinct && cfg.verbosity > 0) {
        err << "family: fingerprints are not pairwise distinct\n";
    }
    return j["pass"].get<bool>() ? kExitOk : kExitChecks;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotationally symmetric steady generalized Ricci solitons: profile solver"};
    app.set_config("--config", "", "Flat key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig cfg;
    std::optional<double> q;
    std::optional<double> ell;
    std::string k_text = "sqrt2";
    std::string samples = "log:1000";
    std::string method = "dopri5";
    std::string ells;
    std::string ell_range;
    std::string oracle;
    bool quiet = false;

    auto* q_opt = app.add_option("--q", q, "Family parameter q = phi'''(0)");
    auto* ell_opt = app.add_option("--ell", ell, "Family index: q = -35/12 - exp(-ell)");
    q_opt->excludes(ell_opt);
    app.add_option("--k", k_text, "Torsion constant: 0 or sqrt2")->capture_default_str();
    app.add_option("--t-max", cfg.params.t_max, "End of the integration")->capture_default_str();
    app.add_option("--eps", cfg.params.eps_handoff, "Series handoff point")->capture_default_str();
    app.add_option("--order", cfg.params.series_order, "Seed truncation degree")
        ->capture_default_str();
    app.add_option("--abs-tol", cfg.params.abs_tol, "Absolute tolerance")->capture_default_str();
    app.add_option("--rel-tol", cfg.params.rel_tol, "Relative tolerance")->capture_default_str();
    app.add_option("--method", method, "Integrator: dopri5 or rkf78")->capture_default_str();
    auto* samples_opt =
        app.add_option("--samples", samples, "Output grid: lin:N, log:N or step:DT")
            ->capture_default_str();
    app.add_option("--out", cfg.out, "Output file (solve, verify) or directory (family)");
    app.add_flag("--observe-only", cfg.observe_only, "Report theorem checks without asserting");
    app.add_option("--oracle", oracle, "Closed-form oracle suite")
        ->check(CLI::IsMember({"brf"}));
    app.add_option("--ells", ells, "Comma-separated ell list (family)");
    app.add_option("--ell-range", ell_range, "START:STOP:COUNT (family)");
    app.add_flag("--quiet", quiet, "No summary on stderr");

    auto* solve = app.add_subcommand("solve", "Integrate one profile and write a CSV");
    auto* verify = app.add_subcommand("verify", "Write the JSON verification report");
    auto* family = app.add_subcommand("family", "Sweep ell values; per-member CSV and family.json");
    for (auto* sub : {solve, verify, family}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream m;
        const int code = app.exit(e, o, m);
        out << o.str();
        err << m.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        cfg.params.k = parse_torsion(k_text);
        cfg.params.method = ode::parse_method(method);
        cfg.grid = SampleGrid::parse(samples);
        cfg.grid_set = samples_opt->count() > 0;
        cfg.verbosity = quiet ? 0 : 1;
        if (!oracle.empty()) {
            cfg.oracle = Oracle::Brf;
        }
        if (q) {
            cfg.params.q = *q;
        }
        if (ell) {
            cfg.params.ell = *ell;
            cfg.params.q = q_from_ell(*ell);
        }
        if (family->parsed()) {
            if (!ells.empty()) {
                cfg.ells = parse_ell_list(ells);
            } else if (!ell_range.empty()) {
                cfg.ells = parse_ell_range(ell_range);
            } else if (ell) {
                cfg.ells = {*ell};
            }
        }
        if (solve->parsed()) {
            return cmd_solve(cfg, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out, err);
        }
        return cmd_family(cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SingularLevel& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace grs::cli
