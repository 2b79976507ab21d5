#pragma once

#include <ostream>

#include "json.hpp"

#include "grs/cli/run_config.hpp"
#include "grs/profile.hpp"

namespace grs::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,     // bad flags, bad config, unsupported parameters
    kExitCollapse = 2,  // orbit collapsed before t_max
    kExitSolver = 3,    // step underflow or non-finite state
    kExitChecks = 4,    // an asserted check or oracle failed
};

int exit_code_for(Termination t);

/// Verification report for cfg; throws std::invalid_argument outside the
/// theorem regime unless observe_only is set.
nlohmann::json verify_report(const RunConfig& cfg);

/// cfg.params moved to the exact solution: q = -1/2, k = sqrt2, t_max = 10.
SolitonParams brf_params(const RunConfig& cfg);

/// Closed-form checks of seed, integrator, geometry and phase run at q = -1/2.
nlohmann::json brf_oracle_checks(const RunConfig& cfg);

/// Writes the CSV to cfg.out (or `out`), a one-line summary to `err`.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes the JSON report to cfg.out (or `out`).
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One CSV per member plus family.json under cfg.out (default "family_out");
/// the fingerprint table goes to `out`.
int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: grs_soliton {solve|verify|family} [options].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grs::cli
