#pragma once

// JSON and CSV encodings of run results. Complex numbers are [re, im] arrays
// in JSON; the point at infinity is the string "inf". CSV cells carry 17
// significant digits so both formats round-trip to the same doubles.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stokes/monodromy.hpp"

namespace stokes::cli {

using nlohmann::json;

json to_json(complex z);
json to_json(const SpherePoint& p);
json to_json(const Potential& p);
json to_json(const RayResult& r);

/// Fields shared by every record: schema version and program version.
json record_header(const std::string& command);

/// compute record; `timing` is kept in its own field so that everything else
/// is a deterministic function of the inputs.
json stokes_record(const Potential& p, const StokesResult& r);

/// For Cubic{0, b} with real nonzero b: WKB value and both rescaled values.
std::optional<json> wkb_fields(const Potential& p, const StokesResult& r);

std::string format_double(double v);
std::string csv_escape(const std::string& cell);
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace stokes::cli
