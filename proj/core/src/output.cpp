#include "ommsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ommsim/errors.hpp"

namespace ommsim {

namespace {

std::size_t pair_index(const SweepSpec& spec, const ModePair& pair) {
  for (std::size_t k = 0; k < spec.pairs.size(); ++k)
    if (spec.pairs[k] == pair) return k;
  throw DomainError("heatmap: pair " + column_name(pair) + " was not part of the sweep");
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& result, bool reproducible) {
  const auto& spec = result.spec;
  out << "# ommsim " << result.tool_version << '\n';
  out << "# params " << params_to_json(result.params) << '\n';
  if (!reproducible) out << "# timestamp " << result.timestamp << '\n';

  out << "axis1_name,axis1_value";
  if (spec.axis2) out << ",axis2_name,axis2_value";
  out << ",stable";
  for (const auto& pair : spec.pairs) out << ',' << column_name(pair);
  out << ",efficiency\n";

  for (const auto& rec : result.records) {
    out << spec.axis1.name << ',' << format_number(rec.axis1_value);
    if (spec.axis2) out << ',' << spec.axis2->name << ',' << format_number(*rec.axis2_value);
    out << ',' << (rec.stable ? 1 : 0);
    for (const auto& e : rec.e_n) out << ',' << optional_field(e);
    out << ',' << optional_field(rec.efficiency) << '\n';
  }

  for (std::size_t i = 0; i < result.records.size(); ++i)
    if (!result.records[i].error.empty())
      out << "# error row " << i << ": " << result.records[i].error << '\n';
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path, bool reproducible) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit_csv: cannot open '" + path.string() + "' for writing");
  write_csv(out, result, reproducible);
  out.flush();
  if (!out) throw Error("emit_csv: write to '" + path.string() + "' failed");
}

std::vector<unsigned char> heatmap_levels(const SweepResult& result, const ModePair& pair) {
  const auto& spec = result.spec;
  const std::size_t k = pair_index(spec, pair);
  const int width = spec.axis1.count;
  const int height = spec.axis2 ? spec.axis2->count : 1;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& rec : result.records) {
    const auto& e = rec.e_n[k];
    if (rec.stable && e && std::isfinite(*e)) {
      lo = std::min(lo, *e);
      hi = std::max(hi, *e);
    }
  }

  std::vector<unsigned char> levels(static_cast<std::size_t>(width) *
                                        static_cast<std::size_t>(height),
                                    0);
  if (!(hi > lo)) return levels;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto& rec = result.at(x, y);
      const auto& e = rec.e_n[k];
      if (!rec.stable || !e || !std::isfinite(*e)) continue;
      const double t = (*e - lo) / (hi - lo);
      levels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(x)] =
          static_cast<unsigned char>(std::lround(255.0 * t));
    }
  }
  return levels;
}

void write_heatmap(std::ostream& out, const SweepResult& result, const ModePair& pair) {
  const auto levels = heatmap_levels(result, pair);
  const int width = result.spec.axis1.count;
  const int height = result.spec.axis2 ? result.spec.axis2->count : 1;
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(levels.data()),
            static_cast<std::streamsize>(levels.size()));
}

void emit_heatmap(const SweepResult& result, const ModePair& pair,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit_heatmap: cannot open '" + path.string() + "' for writing");
  write_heatmap(out, result, pair);
  out.flush();
  if (!out) throw Error("emit_heatmap: write to '" + path.string() + "' failed");
}

}  // namespace ommsim
