#pragma once

/**
 * @file   config.hpp
 * @brief  JSON configuration: parameter overrides on top of the published
 *         defaults plus an optional sweep description.
 *
 * Keys are lower_snake_case (temperature is `T`, in kelvin). Frequencies and
 * rates carry an `_hz` suffix and are ordinary frequencies; they are turned
 * into rad/s here and nowhere else. Detunings are given only as multiples
 * of omega_b (`_over_wb`).
 *
 * @code{.json}
 * {
 *   "delta_c2_over_wb": -0.8,
 *   "T": 0.01,
 *   "sweep": {
 *     "axis1": {"name": "delta_a_over_wb", "start": -2, "stop": 0, "count": 101},
 *     "axis2": {"name": "delta_c1_over_wb", "start": 0, "stop": 2, "count": 101},
 *     "pairs": ["ab", "am", "c2b"]
 *   }
 * }
 * @endcode
 */

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ommsim/entanglement.hpp"
#include "ommsim/model.hpp"

namespace ommsim {

/// Parameters a sweep axis may vary, in configuration units.
inline constexpr std::array<std::string_view, 9> kSweepParameters{
    "delta_a_over_wb", "delta_c1_over_wb", "delta_c2_over_wb", "delta_m_over_wb", "T",
    "g_c_direct_hz",   "g_mb_direct_hz",   "g_n1_hz",          "g_n2_hz"};

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  /// Evenly spaced, endpoints included.
  double value(int index) const;
};

struct SweepSpec {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<ModePair> pairs;

  std::size_t size() const {
    return static_cast<std::size_t>(axis1.count) *
           static_cast<std::size_t>(axis2 ? axis2->count : 1);
  }
};

/// Pairs reported when a config does not name any: ab, am, c2b.
std::vector<ModePair> default_pairs();

/// Delta_a/omega_b in [-2, 0] by Delta_c1/omega_b in [0, 2], 101 x 101.
SweepSpec default_sweep();

/// Throws ConfigError naming the violated invariant.
void validate(const SweepSpec& spec);

struct RunConfig {
  SystemParams params;
  SweepSpec sweep;
  bool sweep_given = false;
};

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Sets one sweepable parameter, `value` in configuration units.
void apply_parameter(SystemParams& params, std::string_view name, double value);

/// Reads one sweepable parameter back in configuration units.
double parameter_value(const SystemParams& params, std::string_view name);

/// Full parameter snapshot in configuration units, compact JSON with sorted keys.
std::string params_to_json(const SystemParams& params);

}  // namespace ommsim
