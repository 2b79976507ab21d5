#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "grs/invariants.hpp"
#include "grs/params.hpp"
#include "grs/phase.hpp"
#include "grs/profile.hpp"

namespace grs::cli {

inline constexpr std::array<std::string_view, 16> kCsvColumns{
    "t", "phi", "dphi", "f", "df", "k_rad", "k_tan", "h",
    "normH2", "h_density", "q1", "q2", "drift2", "x", "y", "z"};

/// 17 significant digits, "%.17g".
std::string format_real(double v);

/// Header row followed by one row per trajectory sample.
void write_csv(std::ostream& os, const Trajectory& traj);

nlohmann::json to_json(const SolitonParams& p);
nlohmann::json to_json(const ConservationSummary& c);
nlohmann::json to_json(const PropertyReport& r);
nlohmann::json to_json(const std::optional<AsymptoticFit>& fit);
nlohmann::json to_json(const CrossValidation& cv);

}  // namespace grs::cli
