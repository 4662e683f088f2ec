#pragma once

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "stokes/monodromy.hpp"

namespace stokes::cli {

/// Every tunable of a run. Resolved with precedence
/// command-line flag > STOKES_* environment variable > config file > default.
struct Settings {
  StokesConfig stokes;
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Names of all tunable keys, in config-file spelling (e.g. "abs_tol").
const std::vector<std::string>& setting_keys();

/// Apply one key=value pair. Throws InvalidArgument for unknown keys or
/// malformed values.
void apply_setting(Settings& s, const std::string& key, const std::string& value);

/// Parse `key = value` lines; '#' starts a comment, values may be quoted.
std::map<std::string, std::string> parse_config(std::istream& in);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_environment();

/// Resolve settings from the three layers. `flags` holds only the keys given
/// on the command line. The config file path comes from the "config" flag or
/// STOKES_CONFIG.
Settings resolve_settings(const std::map<std::string, std::string>& flags, const EnvLookup& env);

/// "re" or "re,im"
complex parse_complex(const std::string& text);

unsigned effective_jobs(const Settings& s);

}  // namespace stokes::cli
