#include "settings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <utility>

#include "stokes/errors.hpp"

namespace stokes::cli {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + text + "'");
  }
  if (used != t.size()) throw Error(ErrorKind::InvalidArgument, "not a number: '" + text + "'");
  return v;
}

using Setter = std::function<void(Settings&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"mode",
       [](Settings& s, const std::string& v) {
         const std::string t = trim(v);
         if (t == "direct") {
           s.stokes.mode = Mode::Direct;
         } else if (t == "linearized") {
           s.stokes.mode = Mode::Linearized;
         } else {
           throw Error(ErrorKind::InvalidArgument, "mode must be 'direct' or 'linearized'");
         }
       }},
      {"abs_tol", [](Settings& s, const std::string& v) { s.stokes.ray.abs_tol = parse_double(v); }},
      {"rel_tol", [](Settings& s, const std::string& v) { s.stokes.ray.rel_tol = parse_double(v); }},
      {"ode_abs_tol",
       [](Settings& s, const std::string& v) { s.stokes.ray.ode_abs_tol = parse_double(v); }},
      {"ode_rel_tol",
       [](Settings& s, const std::string& v) { s.stokes.ray.ode_rel_tol = parse_double(v); }},
      {"spacing", [](Settings& s, const std::string& v) { s.stokes.ray.spacing = parse_double(v); }},
      {"min_length",
       [](Settings& s, const std::string& v) { s.stokes.ray.min_length = parse_double(v); }},
      {"max_length",
       [](Settings& s, const std::string& v) { s.stokes.ray.max_length = parse_double(v); }},
      {"flip_threshold",
       [](Settings& s, const std::string& v) { s.stokes.ray.flip_threshold = parse_double(v); }},
      {"angle_offset",
       [](Settings& s, const std::string& v) { s.stokes.angle_offset = parse_double(v); }},
      {"min_separation",
       [](Settings& s, const std::string& v) { s.stokes.min_separation = parse_double(v); }},
      {"base", [](Settings& s, const std::string& v) { s.stokes.base = parse_complex(v); }},
      {"f0", [](Settings& s, const std::string& v) { s.stokes.data.f0 = parse_complex(v); }},
      {"f1", [](Settings& s, const std::string& v) { s.stokes.data.f1 = parse_complex(v); }},
      {"f2", [](Settings& s, const std::string& v) { s.stokes.data.f2 = parse_complex(v); }},
      {"jobs",
       [](Settings& s, const std::string& v) {
         const double j = parse_double(v);
         if (!(j >= 0.0) || j != std::floor(j)) {
           throw Error(ErrorKind::InvalidArgument, "jobs must be a non-negative integer");
         }
         s.jobs = static_cast<unsigned>(j);
       }},
  };
  return table;
}

std::string env_name(const std::string& key) {
  std::string name = "STOKES_";
  for (const char c : key) name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return name;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(s, value);
      return;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown setting '" + key + "'");
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;  // blank or TOML table header
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument,
                  "config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    out[key] = value;
  }
  return out;
}

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

Settings resolve_settings(const std::map<std::string, std::string>& flags, const EnvLookup& env) {
  Settings s;

  std::optional<std::string> config_path;
  if (const auto it = flags.find("config"); it != flags.end()) {
    config_path = it->second;
  } else {
    config_path = env("STOKES_CONFIG");
  }
  if (config_path && !config_path->empty()) {
    std::ifstream file(*config_path);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + *config_path);
    for (const auto& [key, value] : parse_config(file)) apply_setting(s, key, value);
  }

  for (const auto& key : setting_keys()) {
    if (const auto v = env(env_name(key))) apply_setting(s, key, *v);
  }

  for (const auto& [key, value] : flags) {
    if (key != "config") apply_setting(s, key, value);
  }
  return s;
}

complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

unsigned effective_jobs(const Settings& s) {
  if (s.jobs > 0) return s.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace stokes::cli
