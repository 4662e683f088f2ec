#include "records.hpp"

#include <cmath>
#include <cstdio>

#include "stokes/cli.hpp"
#include "stokes/wkb.hpp"

namespace stokes::cli {

json to_json(complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  return to_json(p.value());
}

json to_json(const Potential& p) {
  if (const auto* q = std::get_if<Perturbed>(&p)) {
    return {{"potential", "perturbed"}, {"y", to_json(q->y)}, {"yp", to_json(q->y_prime)},
            {"z", to_json(q->z)}};
  }
  const auto& c = std::get<Cubic>(p);
  return {{"potential", "cubic"}, {"a", to_json(c.a)}, {"b", to_json(c.b)}};
}

json to_json(const RayResult& r) {
  return {
      {"sector", r.sector},
      {"angle", r.angle},
      {"w", to_json(r.w)},
      {"converged", r.converged},
      {"x_stop", r.x_stop},
      {"checkpoints", r.checkpoints_used},
      {"flips", r.flips},
      {"rate_estimate", r.rate_estimate},
      {"attempts", r.attempts},
      {"rk_steps", r.rk_steps},
  };
}

json record_header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"version", kVersion}, {"command", command}};
}

std::optional<json> wkb_fields(const Potential& p, const StokesResult& r) {
  const auto* c = std::get_if<Cubic>(&p);
  if (c == nullptr || c->a != complex{0.0, 0.0} || c->b.imag() != 0.0 || c->b.real() == 0.0) {
    return std::nullopt;
  }
  const double b = c->b.real();
  return json{
      {"b", b},
      {"sigma0_wkb", to_json(wkb::sigma0(b))},
      {"rescaled", to_json(wkb::rescale_sigma0(r[0], b))},
      {"rescaled_wkb", wkb::rescaled_prediction(b)},
  };
}

json stokes_record(const Potential& p, const StokesResult& r) {
  json record = record_header("compute");
  record["input"] = to_json(p);
  record["mode"] = to_string(r.mode);
  json sigma = json::array();
  json rays = json::array();
  for (int k = -2; k <= 2; ++k) {
    sigma.push_back(to_json(r[k]));
    rays.push_back(to_json(r.rays[sector_slot(k)]));
  }
  record["sigma"] = std::move(sigma);
  record["residual"] = r.residual;
  record["rays"] = std::move(rays);
  if (auto w = wkb_fields(p, r)) record["wkb"] = std::move(*w);
  record["timing"] = {{"wall_seconds", r.wall_seconds}};
  return record;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(cells[i]);
  }
  out << "\r\n";
}

}  // namespace stokes::cli
