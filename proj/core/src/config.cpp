#include "ommsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ommsim/errors.hpp"
#include "ommsim/units.hpp"

namespace ommsim {

namespace {

using nlohmann::json;

enum class Unit { hz, over_wb, raw };

struct NumericKey {
  std::string_view key;
  double SystemParams::*member;
  Unit unit;
};

// omega_b precedes the detunings: they are resolved against it.
const std::array<NumericKey, 24> kNumericKeys{{
    {"omega_m_hz", &SystemParams::omega_m, Unit::hz},
    {"omega_b_hz", &SystemParams::omega_b, Unit::hz},
    {"delta_a_over_wb", &SystemParams::delta_a, Unit::over_wb},
    {"delta_c1_over_wb", &SystemParams::delta_c1, Unit::over_wb},
    {"delta_c2_over_wb", &SystemParams::delta_c2, Unit::over_wb},
    {"delta_m_over_wb", &SystemParams::delta_m, Unit::over_wb},
    {"kappa_a_hz", &SystemParams::kappa_a, Unit::hz},
    {"kappa_c1_hz", &SystemParams::kappa_c1, Unit::hz},
    {"kappa_c2_hz", &SystemParams::kappa_c2, Unit::hz},
    {"kappa_m_hz", &SystemParams::kappa_m, Unit::hz},
    {"gamma_b_hz", &SystemParams::gamma_b, Unit::hz},
    {"g_n1_hz", &SystemParams::g_n1, Unit::hz},
    {"g_n2_hz", &SystemParams::g_n2, Unit::hz},
    {"g_c_hz", &SystemParams::g_c, Unit::hz},
    {"g_m_hz", &SystemParams::g_m, Unit::hz},
    {"g_c_direct_hz", &SystemParams::g_c_direct, Unit::hz},
    {"g_mb_direct_hz", &SystemParams::g_mb_direct, Unit::hz},
    {"laser_power_w", &SystemParams::laser_power, Unit::raw},
    {"wavelength_m", &SystemParams::wavelength, Unit::raw},
    {"microwave_power_w", &SystemParams::microwave_power, Unit::raw},
    {"b0_t", &SystemParams::b0, Unit::raw},
    {"yig_volume_m3", &SystemParams::yig_volume, Unit::raw},
    {"spin_density_m3", &SystemParams::spin_density, Unit::raw},
    {"T", &SystemParams::temperature, Unit::raw},
}};

constexpr std::array<std::string_view, 7> kOtherKeys{
    "coupling_mode", "cavity_solver", "coupling_placement", "theta_c_rad",
    "theta_m_rad",   "magnon_uses_cavity2_detuning",  "sweep"};

const NumericKey* find_numeric(std::string_view key) {
  for (const auto& k : kNumericKeys)
    if (k.key == key) return &k;
  return nullptr;
}

double to_config_units(const SystemParams& p, const NumericKey& k) {
  const double v = p.*(k.member);
  switch (k.unit) {
    case Unit::hz: return units::ordinary(v);
    case Unit::over_wb: return v / p.omega_b;
    case Unit::raw: return v;
  }
  return v;
}

void from_config_units(SystemParams& p, const NumericKey& k, double value) {
  switch (k.unit) {
    case Unit::hz: p.*(k.member) = units::angular(value); break;
    case Unit::over_wb: p.*(k.member) = value * p.omega_b; break;
    case Unit::raw: p.*(k.member) = value; break;
  }
}

double require_number(const json& j, std::string_view key) {
  if (!j.is_number())
    throw ConfigError("config key '" + std::string(key) + "' must be a number");
  return j.get<double>();
}

std::string require_string(const json& j, std::string_view key) {
  if (!j.is_string())
    throw ConfigError("config key '" + std::string(key) + "' must be a string");
  return j.get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  std::vector<std::string> unknown;
  for (const auto& [key, _] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) unknown.push_back(key);
  if (!unknown.empty()) {
    std::ostringstream os;
    os << "unknown key(s) in " << where << ":";
    for (const auto& k : unknown) os << " '" << k << "'";
    throw ConfigError(os.str());
  }
}

SweepAxis parse_axis(const json& j, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  reject_unknown(j, {"name", "start", "stop", "count"}, where);
  for (const char* k : {"name", "start", "stop", "count"})
    if (!j.contains(k))
      throw ConfigError(std::string(where) + " is missing '" + k + "'");
  SweepAxis axis;
  axis.name = require_string(j["name"], "name");
  axis.start = require_number(j["start"], "start");
  axis.stop = require_number(j["stop"], "stop");
  if (!j["count"].is_number_integer())
    throw ConfigError(std::string(where) + ".count must be an integer");
  axis.count = j["count"].get<int>();
  return axis;
}

SweepSpec parse_sweep(const json& j) {
  if (!j.is_object()) throw ConfigError("'sweep' must be an object");
  reject_unknown(j, {"axis1", "axis2", "pairs"}, "sweep");
  if (!j.contains("axis1")) throw ConfigError("sweep is missing 'axis1'");
  SweepSpec spec;
  spec.axis1 = parse_axis(j["axis1"], "sweep.axis1");
  if (j.contains("axis2") && !j["axis2"].is_null())
    spec.axis2 = parse_axis(j["axis2"], "sweep.axis2");
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) throw ConfigError("sweep.pairs must be an array");
    for (const auto& item : j["pairs"]) {
      try {
        spec.pairs.push_back(pair_from_label(require_string(item, "pairs[]")));
      } catch (const DomainError& e) {
        throw ConfigError(std::string("sweep.pairs: ") + e.what());
      }
    }
  } else {
    spec.pairs = default_pairs();
  }
  return spec;
}

}  // namespace

double SweepAxis::value(int index) const {
  if (index == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(count - 1);
}

std::vector<ModePair> default_pairs() {
  return {{ModeId::atom, ModeId::phonon},
          {ModeId::atom, ModeId::magnon},
          {ModeId::cavity2, ModeId::phonon}};
}

SweepSpec default_sweep() {
  SweepSpec spec;
  spec.axis1 = {"delta_a_over_wb", -2.0, 0.0, 101};
  spec.axis2 = SweepAxis{"delta_c1_over_wb", 0.0, 2.0, 101};
  spec.pairs = default_pairs();
  return spec;
}

void validate(const SweepSpec& spec) {
  auto check_axis = [](const SweepAxis& axis, const char* which) {
    if (std::find(kSweepParameters.begin(), kSweepParameters.end(), axis.name) ==
        kSweepParameters.end())
      throw ConfigError(std::string(which) + ": '" + axis.name +
                        "' is not a sweepable parameter");
    if (axis.count < 2) throw ConfigError(std::string(which) + ": count >= 2 required");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
      throw ConfigError(std::string(which) + ": start and stop must be finite");
    if (axis.start == axis.stop) throw ConfigError(std::string(which) + ": start != stop required");
  };
  check_axis(spec.axis1, "sweep.axis1");
  if (spec.axis2) {
    check_axis(*spec.axis2, "sweep.axis2");
    if (spec.axis2->name == spec.axis1.name)
      throw ConfigError("sweep: axis1 and axis2 vary the same parameter");
  }
  if (spec.pairs.empty()) throw ConfigError("sweep: at least one mode pair is required");
  for (const auto& pair : spec.pairs)
    if (pair.first == pair.second) throw ConfigError("sweep: mode pairs must be distinct modes");
}

void apply_parameter(SystemParams& params, std::string_view name, double value) {
  if (std::find(kSweepParameters.begin(), kSweepParameters.end(), name) ==
      kSweepParameters.end())
    throw ConfigError("'" + std::string(name) + "' is not a sweepable parameter");
  from_config_units(params, *find_numeric(name), value);
}

double parameter_value(const SystemParams& params, std::string_view name) {
  const auto* key = find_numeric(name);
  if (!key) throw ConfigError("unknown parameter '" + std::string(name) + "'");
  return to_config_units(params, *key);
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a single JSON object");

  {
    std::vector<std::string> unknown;
    for (const auto& [key, _] : root.items())
      if (!find_numeric(key) &&
          std::find(kOtherKeys.begin(), kOtherKeys.end(), key) == kOtherKeys.end())
        unknown.push_back(key);
    if (!unknown.empty()) {
      std::ostringstream os;
      os << "unknown config key(s):";
      for (const auto& k : unknown) os << " '" << k << "'";
      throw ConfigError(os.str());
    }
  }

  const SystemParams defaults = default_params();
  std::map<std::string_view, double> values;
  for (const auto& k : kNumericKeys) values[k.key] = to_config_units(defaults, k);
  for (const auto& k : kNumericKeys)
    if (root.contains(k.key)) values[k.key] = require_number(root[std::string(k.key)], k.key);

  RunConfig cfg;
  SystemParams& p = cfg.params;
  p = defaults;
  for (const auto& k : kNumericKeys) from_config_units(p, k, values[k.key]);

  if (root.contains("coupling_mode")) {
    const auto s = require_string(root["coupling_mode"], "coupling_mode");
    if (s == "direct") p.coupling_mode = CouplingMode::direct;
    else if (s == "derived") p.coupling_mode = CouplingMode::derived;
    else throw ConfigError("coupling_mode must be \"direct\" or \"derived\"");
  }
  if (root.contains("cavity_solver")) {
    const auto s = require_string(root["cavity_solver"], "cavity_solver");
    if (s == "linear_solve") p.cavity_solver = CavitySolver::linear_solve;
    else if (s == "closed_form") p.cavity_solver = CavitySolver::closed_form;
    else throw ConfigError("cavity_solver must be \"linear_solve\" or \"closed_form\"");
  }
  if (root.contains("coupling_placement")) {
    const auto s = require_string(root["coupling_placement"], "coupling_placement");
    if (s == "hamiltonian") p.convention.placement = CouplingPlacement::hamiltonian;
    else if (s == "printed") p.convention.placement = CouplingPlacement::printed;
    else throw ConfigError("coupling_placement must be \"hamiltonian\" or \"printed\"");
  }
  if (root.contains("theta_c_rad"))
    p.convention.theta_c = require_number(root["theta_c_rad"], "theta_c_rad");
  if (root.contains("theta_m_rad"))
    p.convention.theta_m = require_number(root["theta_m_rad"], "theta_m_rad");
  if (root.contains("magnon_uses_cavity2_detuning")) {
    if (!root["magnon_uses_cavity2_detuning"].is_boolean())
      throw ConfigError("config key 'magnon_uses_cavity2_detuning' must be a boolean");
    p.magnon_uses_cavity2_detuning = root["magnon_uses_cavity2_detuning"].get<bool>();
  }

  try {
    validate(p);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  if (root.contains("sweep")) {
    cfg.sweep = parse_sweep(root["sweep"]);
    cfg.sweep_given = true;
  } else {
    cfg.sweep = default_sweep();
  }
  validate(cfg.sweep);

  // Both ends of every axis must describe a valid operating point.
  std::vector<const SweepAxis*> axes{&cfg.sweep.axis1};
  if (cfg.sweep.axis2) axes.push_back(&*cfg.sweep.axis2);
  for (const auto* axis : axes) {
    for (double v : {axis->start, axis->stop}) {
      SystemParams probe = p;
      apply_parameter(probe, axis->name, v);
      try {
        validate(probe);
      } catch (const DomainError& e) {
        throw ConfigError("sweep axis '" + axis->name + "' leaves the valid range: " + e.what());
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string params_to_json(const SystemParams& p) {
  json j = json::object();
  for (const auto& k : kNumericKeys) j[std::string(k.key)] = to_config_units(p, k);
  j["coupling_mode"] = p.coupling_mode == CouplingMode::direct ? "direct" : "derived";
  j["cavity_solver"] =
      p.cavity_solver == CavitySolver::linear_solve ? "linear_solve" : "closed_form";
  j["coupling_placement"] =
      p.convention.placement == CouplingPlacement::hamiltonian ? "hamiltonian" : "printed";
  j["theta_c_rad"] = p.convention.theta_c;
  j["theta_m_rad"] = p.convention.theta_m;
  j["magnon_uses_cavity2_detuning"] = p.magnon_uses_cavity2_detuning;
  return j.dump();
}

}  // namespace ommsim
