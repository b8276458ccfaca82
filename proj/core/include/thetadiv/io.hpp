#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thetadiv/chow.hpp"
#include "thetadiv/config.hpp"
#include "thetadiv/kempf.hpp"
#include "thetadiv/ppav.hpp"
#include "thetadiv/siegel.hpp"

namespace thetadiv::io {

// JSON schemas
//   SiegelMatrix: {"g": int, "omega": [[{"re": float, "im": float}, ...], ...]}
//   Config:       every field of thetadiv::Config by name; missing fields keep defaults.
//   AbelianPoint: {"p": ["1/2", ...], "q": [...], "extra": [{"re":..,"im":..}, ...]}
//
// CSV layouts (header row first)
//   count:    p,q,magnitude,hit                      one row per torsion index, p/q as "p0 p1 ..."
//   corank:   a,b,g,source_dim,target_dim,numerical_rank,corank,torsion_count,match,
//             min_accepted_sigma,max_rejected_sigma,twist_side
//   identity: identity,parameters,expected,computed,pass
//   scan:     y_p,y_q,y_extra_re,y_extra_im,corank,predicted,divisor_predicted

std::string siegel_to_json(const SiegelMatrix& omega);
SiegelMatrix siegel_from_json(std::string_view text);

std::string config_to_json(const Config& config);
Config config_from_json(std::string_view text);

std::string point_to_json(const AbelianPoint& point);
AbelianPoint point_from_json(std::string_view text);

std::string count_report_to_json(const CountReport& report);
std::string count_report_to_csv(const CountReport& report);

std::string corank_report_to_json(const CorankReport& report);
std::string corank_csv_header();
std::string corank_csv_row(const CorankReport& report);

std::string identity_table_to_json(const std::vector<IdentityRow>& rows);
std::string identity_table_to_csv(const std::vector<IdentityRow>& rows);

std::string scan_to_csv(const ScanResult& scan);

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial artifact.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Round-trip decimal formatting used in every artifact.
std::string format_double(double value);

}  // namespace thetadiv::io
