#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "h3body/dynamics.hpp"
#include "h3body/geometry.hpp"
#include "h3body/sweep.hpp"

namespace h3body {

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial file. Creates parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text(const std::filesystem::path& path);

/// State file: {"q1": [[re,im] x4], "p1": ..., "q2": ..., "p2": ...,
///              "masses": [m1, m2]?, "generator": [[re,im] x4]?}
struct StateFile {
  PhasePoint state;
  std::optional<Masses> masses;
  std::optional<Biquaternion> generator;
};

std::string state_to_json(const StateFile& s);
/// Throws InvalidInput with a message naming the offending field.
StateFile state_from_json(std::string_view text);

std::string orbit_csv(const std::vector<double>& times, const std::vector<BallPoint>& pts);

/// t, re/im of the 16 phase coordinates (q1 p1 q2 p2, u v w z each),
/// H_re, H_im, energy_drift, constraint_drift.
std::string trajectory_csv(const Trajectory<PhasePoint>& traj, const Masses& m, const Potential& pot);

std::string re_sweep_csv(const std::vector<RESweepRow>& rows);
std::string ec_csv(const std::vector<ECSample>& samples);

}  // namespace h3body
