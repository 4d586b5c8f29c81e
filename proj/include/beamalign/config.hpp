#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "beamalign/pipeline.hpp"

namespace beamalign {

/// "a:b,c:d,..." -> [(a, b), (c, d), ...]
std::vector<EpsPair> parse_eps_pairs(std::string_view text);

/// "rx,tx" or several separated by ';'.
std::vector<BeamAngles> parse_centers(std::string_view text);

/// Applies one `key = value` setting. Keys mirror AlignmentConfig fields:
/// seed, n_tx, n_rx, alpha1, alpha2, alpha3, degree_cap, center, eps_pairs,
/// grid_points, imag_tol, residual_tol, cluster_tol, record_timing.
void apply_setting(AlignmentConfig& cfg, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and '#' comments are skipped.
void load_config(AlignmentConfig& cfg, std::istream& is);
void load_config(AlignmentConfig& cfg, const std::filesystem::path& path);

}  // namespace beamalign
