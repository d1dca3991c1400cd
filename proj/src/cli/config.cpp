#include "cli/config.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "h3body/errors.hpp"
#include "h3body/io.hpp"

namespace h3body::cli {

using nlohmann::json;

Potential RunConfig::make_potential() const {
  if (potential.kind == "gravitational") return potential_gravitational(masses);
  if (potential.kind == "polynomial") {
    if (potential.coefficients.empty())
      throw InvalidInput("polynomial potential needs at least one coefficient");
    return potential_polynomial(potential.coefficients);
  }
  throw InvalidInput("unknown potential '" + potential.kind + "' (expected gravitational or polynomial)");
}

std::set<Format> parse_formats(const std::string& list) {
  std::set<Format> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") out.insert(Format::csv);
    else if (item == "json") out.insert(Format::json);
    else if (item == "svg") out.insert(Format::svg);
    else if (!item.empty())
      throw InvalidInput("unknown format '" + item + "' (expected csv, json or svg)");
  }
  if (out.empty()) throw InvalidInput("--format needs at least one of csv, json, svg");
  return out;
}

namespace {

template <typename T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("config: field '") + key + "' has the wrong type");
  }
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("config: top level must be a JSON object");

  if (doc.contains("masses")) {
    const auto m = get<std::vector<double>>(doc, "masses");
    if (m.size() != 2) throw InvalidInput("config: 'masses' must be [m1, m2]");
    cfg.masses = Masses(m[0], m[1]);
  }
  if (doc.contains("potential")) {
    const json& p = doc["potential"];
    if (p.contains("kind")) cfg.potential.kind = get<std::string>(p, "kind");
    if (p.contains("coefficients")) cfg.potential.coefficients = get<std::vector<double>>(p, "coefficients");
  }
  if (doc.contains("integrator")) {
    const json& i = doc["integrator"];
    if (i.contains("method")) cfg.integrator.method = parse_method(get<std::string>(i, "method"));
    if (i.contains("dt")) cfg.integrator.dt = get<double>(i, "dt");
    if (i.contains("t_end")) cfg.integrator.t_end = get<double>(i, "t_end");
    if (i.contains("rtol")) cfg.integrator.rtol = get<double>(i, "rtol");
    if (i.contains("atol")) cfg.integrator.atol = get<double>(i, "atol");
    if (i.contains("blowup")) cfg.integrator.blowup = get<double>(i, "blowup");
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (g.contains("theta_steps")) cfg.grid.theta_steps = get<int>(g, "theta_steps");
    if (g.contains("psi_lo")) cfg.grid.psi_lo = get<double>(g, "psi_lo");
    if (g.contains("psi_hi")) cfg.grid.psi_hi = get<double>(g, "psi_hi");
    if (g.contains("psi_steps")) cfg.grid.psi_steps = get<int>(g, "psi_steps");
  }
  if (doc.contains("out")) cfg.out = get<std::string>(doc, "out");
  if (doc.contains("formats")) {
    std::string joined;
    for (const auto& f : get<std::vector<std::string>>(doc, "formats")) joined += f + ",";
    cfg.formats = parse_formats(joined);
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  apply_config_json(cfg, read_text(path));
  return cfg;
}

void validate(const RunConfig& cfg) {
  (void)Masses(cfg.masses.m1, cfg.masses.m2);
  (void)make_grid(cfg.grid.theta_steps, cfg.grid.psi_lo, cfg.grid.psi_hi, cfg.grid.psi_steps);
  const auto& i = cfg.integrator;
  if (!(i.dt > 0.0)) throw InvalidInput("integrator dt must be > 0");
  if (!(i.t_end >= 0.0)) throw InvalidInput("integrator t_end must be >= 0");
  if (!(i.rtol > 0.0) || !(i.atol > 0.0) || !(i.blowup > 0.0))
    throw InvalidInput("integrator tolerances must be > 0");
  cfg.make_potential();
}

}  // namespace h3body::cli
