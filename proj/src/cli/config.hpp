#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "h3body/dynamics.hpp"
#include "h3body/sweep.hpp"

namespace h3body::cli {

enum class Format { csv, json, svg };

struct PotentialSpec {
  std::string kind = "gravitational";  // or "polynomial"
  std::vector<double> coefficients;
};

struct RunConfig {
  Masses masses{1.0, 2.0};
  PotentialSpec potential;
  IntegratorOptions integrator;
  Grid grid;
  std::filesystem::path out = ".";
  std::set<Format> formats{Format::csv, Format::json, Format::svg};

  bool wants(Format f) const { return formats.count(f) > 0; }
  Potential make_potential() const;
};

/// Config file layout (every key optional):
///   {"masses": [m1, m2],
///    "potential": {"kind": "gravitational" | "polynomial", "coefficients": [c0, c1, ...]},
///    "integrator": {"method": "rk4" | "dopri", "dt": .., "t_end": .., "rtol": .., "atol": .., "blowup": ..},
///    "grid": {"theta_steps": .., "psi_lo": .., "psi_hi": .., "psi_steps": ..},
///    "out": "dir", "formats": ["csv", "json", "svg"]}
/// Throws InvalidInput on unknown values or wrong types.
RunConfig load_config(const std::filesystem::path& path);
void apply_config_json(RunConfig& cfg, const std::string& text);

std::set<Format> parse_formats(const std::string& list);

/// Re-checks the invariants after flags have been merged in.
void validate(const RunConfig& cfg);

}  // namespace h3body::cli
