#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grs/params.hpp"
#include "grs/profile.hpp"

namespace grs::cli {

enum class Oracle { Brf };

struct RunConfig {
    SolitonParams params;
    SampleGrid grid;             // default log:1000
    bool grid_set = false;       // --samples given explicitly
    std::string out;             // file (solve, verify) or directory (family); empty: stdout
    bool observe_only = false;
    std::optional<Oracle> oracle;
    std::vector<double> ells;    // family members
    int verbosity = 1;

    /// Output times in [eps, t_max].
    std::vector<double> sample_times() const;
};

/// "-1,0,1,2" -> {-1, 0, 1, 2}. Throws std::invalid_argument on bad input.
std::vector<double> parse_ell_list(std::string_view text);

/// "START:STOP:COUNT" -> COUNT evenly spaced values, both ends included.
std::vector<double> parse_ell_range(std::string_view text);

/// GRS_SOLITON_THREADS if set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

/// Parses the --k argument: "0" or "sqrt2" (numeric sqrt(2) also accepted).
double parse_torsion(std::string_view text);

}  // namespace grs::cli
