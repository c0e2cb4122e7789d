#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ommsim/harness.hpp"

namespace ommsim {

/// Nine significant digits, %.9g.
std::string format_number(double value);

/// CSV with leading '#' metadata lines, one header line, then one row per
/// grid point:
///   axis1_name,axis1_value[,axis2_name,axis2_value],stable,E_..,...,efficiency
/// Undefined values are empty fields. `reproducible` drops the timestamp line.
void write_csv(std::ostream& out, const SweepResult& result, bool reproducible);
void emit_csv(const SweepResult& result, const std::filesystem::path& path, bool reproducible);

/// 8-bit grey levels for one pair, laid out width = axis1 count,
/// height = axis2 count (1 for a 1D sweep). Linear min-max normalization
/// over finite values; unstable or undefined cells and constant fields map to 0.
std::vector<unsigned char> heatmap_levels(const SweepResult& result, const ModePair& pair);

/// Binary PGM (P5, maxval 255) of `heatmap_levels`.
void write_heatmap(std::ostream& out, const SweepResult& result, const ModePair& pair);
void emit_heatmap(const SweepResult& result, const ModePair& pair,
                  const std::filesystem::path& path);

}  // namespace ommsim
