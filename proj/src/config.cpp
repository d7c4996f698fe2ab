#include "qkt/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qkt/error.hpp"

namespace qkt {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("invalid value '" + std::string(v) + "' for key '" + std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(v) + "' for key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"qubits", "number of qubits N (j = N/2) [50]"},
      {"p", "precession angle per period [pi/2]"},
      {"k", "single kick strength (sets k_min = k_max)"},
      {"k_min", "first kick strength of the sweep [0]"},
      {"k_max", "last kick strength of the sweep [6.8]"},
      {"k_step", "sweep step [0.1 quantum sweeps, 0.01 bifurcation]"},
      {"kicks", "number of Floquet periods to evolve [500]"},
      {"theta", "initial / fixed polar angle [pi/2]"},
      {"phi", "initial / fixed azimuth [-pi/2] (south pole w.r.t. Y)"},
      {"scan_axis", "branch-scan axis: theta or phi [theta]"},
      {"scan_min", "branch-scan start angle [0 for theta, -pi for phi]"},
      {"scan_max", "branch-scan end angle [pi]"},
      {"scan_points", "branch-scan grid points [181]"},
      {"L", "autocorrelation length, M = -L..L [500]"},
      {"omega_grid", "points of the spectral-density grid [4096]"},
      {"grid", "Husimi grid as <n_theta>x<n_phi> [200x200]"},
      {"transient", "bifurcation: discarded iterates [1000]"},
      {"record", "bifurcation: recorded iterates per k [100]"},
      {"displacement", "bifurcation: seed offset in theta, radians [0.001]"},
      {"seeds", "portrait: number of initial points on a theta grid [40]"},
      {"iterates", "portrait: iterates per trajectory [500]"},
      {"average", "time-average entanglement over kicks 1..kicks [false]"},
      {"workers", "worker threads [1]"},
      {"out", "output CSV path [<subcommand>.csv]"},
  };
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  const std::string_view v = trim(value);
  if (key == "qubits") n_qubits = parse_value<int>(key, v);
  else if (key == "p") p = parse_value<double>(key, v);
  else if (key == "k") k_min = k_max = parse_value<double>(key, v);
  else if (key == "k_min") k_min = parse_value<double>(key, v);
  else if (key == "k_max") k_max = parse_value<double>(key, v);
  else if (key == "k_step") k_step = parse_value<double>(key, v);
  else if (key == "kicks") n_kicks = parse_value<int>(key, v);
  else if (key == "theta") theta = parse_value<double>(key, v);
  else if (key == "phi") phi = parse_value<double>(key, v);
  else if (key == "scan_axis") {
    if (v == "theta") scan_axis = ScanAxis::Theta;
    else if (v == "phi") scan_axis = ScanAxis::Phi;
    else throw ConfigError("scan_axis must be 'theta' or 'phi', got '" + std::string(v) + "'");
  }
  else if (key == "scan_min") scan_min = parse_value<double>(key, v);
  else if (key == "scan_max") scan_max = parse_value<double>(key, v);
  else if (key == "scan_points") scan_points = parse_value<int>(key, v);
  else if (key == "L") L = parse_value<int>(key, v);
  else if (key == "omega_grid") omega_grid = parse_value<int>(key, v);
  else if (key == "grid") {
    const auto x = v.find('x');
    if (x == std::string_view::npos) throw ConfigError("grid must look like <int>x<int>, got '" + std::string(v) + "'");
    grid_theta = parse_value<int>(key, trim(v.substr(0, x)));
    grid_phi = parse_value<int>(key, trim(v.substr(x + 1)));
  }
  else if (key == "transient") transient = parse_value<int>(key, v);
  else if (key == "record") record = parse_value<int>(key, v);
  else if (key == "displacement") displacement = parse_value<double>(key, v);
  else if (key == "seeds") seeds = parse_value<int>(key, v);
  else if (key == "iterates") iterates = parse_value<int>(key, v);
  else if (key == "average") average = parse_bool(key, v);
  else if (key == "workers") workers = parse_value<int>(key, v);
  else if (key == "out") out = std::string(v);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void ExperimentConfig::validate() const {
  if (n_qubits < 2) throw ConfigError("qubits must be >= 2");
  if (!(k_min <= k_max)) throw ConfigError("k_min must not exceed k_max");
  if (k_min < 0.0) throw ConfigError("kick strengths must be >= 0");
  if (k_step && !(*k_step > 0.0)) throw ConfigError("k_step must be > 0");
  if (n_kicks < 0) throw ConfigError("kicks must be >= 0");
  if (L < 1) throw ConfigError("L must be >= 1");
  if (omega_grid < 2) throw ConfigError("omega_grid must be >= 2");
  if (grid_theta < 2 || grid_phi < 2) throw ConfigError("grid sizes must be >= 2");
  if (scan_points < 2) throw ConfigError("scan_points must be >= 2");
  if (transient < 1 || record < 1) throw ConfigError("transient and record must be >= 1");
  if (seeds < 1 || iterates < 0) throw ConfigError("seeds must be >= 1 and iterates >= 0");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      base.set(trim(s.substr(0, eq)), s.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return parse_config(ss.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace qkt
