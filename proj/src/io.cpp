#include "h3body/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "h3body/errors.hpp"

namespace h3body {

using nlohmann::json;

std::string format_number(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InvalidInput("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

json to_json(const Biquaternion& q) {
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back({q[k].real(), q[k].imag()});
  return a;
}

Biquaternion biquaternion_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("state file: missing field '") + key + "'");
  const json& a = doc.at(key);
  auto bad = [&] {
    return InvalidInput(std::string("state file: field '") + key +
                        "' must be an array of 4 [re, im] number pairs");
  };
  if (!a.is_array() || a.size() != 4) throw bad();
  Biquaternion q;
  for (int k = 0; k < 4; ++k) {
    const json& c = a[k];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) throw bad();
    q[k] = cplx(c[0].get<double>(), c[1].get<double>());
  }
  return q;
}

void append_row(std::string& out, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string state_to_json(const StateFile& s) {
  json doc;
  doc["q1"] = to_json(s.state.q1);
  doc["p1"] = to_json(s.state.p1);
  doc["q2"] = to_json(s.state.q2);
  doc["p2"] = to_json(s.state.p2);
  if (s.masses) doc["masses"] = {s.masses->m1, s.masses->m2};
  if (s.generator) doc["generator"] = to_json(*s.generator);
  return doc.dump(2) + "\n";
}

StateFile state_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("state file: top level must be a JSON object");
  StateFile s;
  s.state = {biquaternion_field(doc, "q1"), biquaternion_field(doc, "p1"),
             biquaternion_field(doc, "q2"), biquaternion_field(doc, "p2")};
  if (doc.contains("masses")) {
    const json& m = doc["masses"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number())
      throw InvalidInput("state file: 'masses' must be [m1, m2]");
    s.masses = Masses(m[0].get<double>(), m[1].get<double>());
  }
  if (doc.contains("generator")) s.generator = biquaternion_field(doc, "generator");
  return s;
}

std::string orbit_csv(const std::vector<double>& times, const std::vector<BallPoint>& pts) {
  std::string out = "t,X,Y,Z\n";
  for (std::size_t k = 0; k < pts.size(); ++k) append_row(out, {times[k], pts[k].X, pts[k].Y, pts[k].Z});
  return out;
}

std::string trajectory_csv(const Trajectory<PhasePoint>& traj, const Masses& m, const Potential& pot) {
  std::string out = "t";
  for (const char* name : {"q1", "p1", "q2", "p2"})
    for (const char* c : {"u", "v", "w", "z"}) {
      out += std::string(",") + name + "_" + c + "_re";
      out += std::string(",") + name + "_" + c + "_im";
    }
  out += ",H_re,H_im,energy_drift,constraint_drift\n";
  if (traj.states.empty()) return out;

  const cplx H0 = hamiltonian(traj.states.front(), m, pot);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const PhasePoint& s = traj.states[k];
    out += format_number(traj.times[k]);
    for (const Biquaternion* b : {&s.q1, &s.p1, &s.q2, &s.p2})
      for (int c = 0; c < 4; ++c) {
        out += ',' + format_number((*b)[c].real());
        out += ',' + format_number((*b)[c].imag());
      }
    const cplx H = hamiltonian(s, m, pot);
    const PhaseInvariantReport rep = check_invariants(s);
    out += ',' + format_number(H.real()) + ',' + format_number(H.imag());
    out += ',' + format_number(std::abs(H - H0));
    out += ',' + format_number(std::max(rep.sphere_drift, rep.cotangent_drift)) + '\n';
  }
  return out;
}

std::string re_sweep_csv(const std::vector<RESweepRow>& rows) {
  std::string out = "theta,psi,m1,m2,chi1,chi2,eta_abs,zeta,gamma,verdict,residual\n";
  for (const auto& r : rows) {
    for (double v : {r.theta, r.psi, r.m1, r.m2, r.chi1, r.chi2, r.eta_abs, r.zeta, r.gamma})
      out += format_number(v) + ',';
    out += to_string(r.verdict) + ',' + format_number(r.residual) + '\n';
  }
  return out;
}

std::string ec_csv(const std::vector<ECSample>& samples) {
  std::string out = "theta,psi,H,C_re,C_im,gamma\n";
  for (const auto& s : samples)
    append_row(out, {s.theta, s.psi, s.point.H, s.point.C_re, s.point.C_im, s.gamma});
  return out;
}

}  // namespace h3body
