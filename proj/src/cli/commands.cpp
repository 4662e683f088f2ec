#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "records.hpp"
#include "settings.hpp"
#include "stokes/acceptance.hpp"
#include "stokes/cli.hpp"
#include "stokes/errors.hpp"
#include "stokes/wkb.hpp"

namespace stokes::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string flag_name(const std::string& key) {
  std::string name = "--";
  for (const char c : key) name.push_back(c == '_' ? '-' : c);
  return name;
}

std::vector<std::string> complex_cells(complex z) {
  return {format_double(z.real()), format_double(z.imag())};
}

void append(std::vector<std::string>& row, const std::vector<std::string>& more) {
  row.insert(row.end(), more.begin(), more.end());
}

std::vector<std::string> sigma_header() {
  std::vector<std::string> h;
  for (int k = -2; k <= 2; ++k) {
    const std::string name = "sigma_" + std::string(k < 0 ? "m" : "") + std::to_string(std::abs(k));
    h.push_back(name + "_re");
    h.push_back(name + "_im");
  }
  return h;
}

void append_sigma(std::vector<std::string>& row, const StokesResult& r) {
  for (int k = -2; k <= 2; ++k) append(row, complex_cells(r[k]));
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::optional<std::string> a, b, y, yp, z;
};

Potential potential_from(const ComputeArgs& c) {
  const bool cubic_any = c.a || c.b;
  const bool pert_any = c.y || c.yp || c.z;
  if (cubic_any && pert_any) {
    throw UsageError("give either --a/--b or --y/--yp/--z, not both");
  }
  if (cubic_any) {
    if (!(c.a && c.b)) throw UsageError("--a and --b must be given together");
    return Cubic{parse_complex(*c.a), parse_complex(*c.b)};
  }
  if (pert_any) {
    if (!(c.y && c.yp && c.z)) throw UsageError("--y, --yp and --z must be given together");
    return Perturbed{parse_complex(*c.y), parse_complex(*c.yp), parse_complex(*c.z)};
  }
  throw UsageError("compute needs --a/--b or --y/--yp/--z");
}

void write_compute_csv(std::ostream& out, const Potential& p, const StokesResult& r) {
  std::vector<std::string> header{"potential"};
  std::vector<std::string> row;
  if (const auto* c = std::get_if<Cubic>(&p)) {
    append(header, {"a_re", "a_im", "b_re", "b_im"});
    row.push_back("cubic");
    append(row, complex_cells(c->a));
    append(row, complex_cells(c->b));
  } else {
    const auto& q = std::get<Perturbed>(p);
    append(header, {"y_re", "y_im", "yp_re", "yp_im", "z_re", "z_im"});
    row.push_back("perturbed");
    append(row, complex_cells(q.y));
    append(row, complex_cells(q.y_prime));
    append(row, complex_cells(q.z));
  }
  header.push_back("mode");
  row.push_back(to_string(r.mode));
  append(header, sigma_header());
  append_sigma(row, r);
  header.push_back("residual");
  row.push_back(format_double(r.residual));
  write_csv_row(out, header);
  write_csv_row(out, row);
}

int cmd_compute(const ComputeArgs& args, const Settings& s, const std::string& format,
                std::ostream& out) {
  const Potential p = potential_from(args);
  const StokesResult r = compute_stokes(p, s.stokes);
  if (format == "csv") {
    write_compute_csv(out, p, r);
  } else {
    print_json(out, stokes_record(p, r));
  }
  return kExitOk;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  double b_min = -20.0;
  double b_max = 0.0;
  int steps = 41;
};

std::vector<double> scan_grid(const ScanArgs& a) {
  if (!(a.b_min < a.b_max)) throw UsageError("--b-min must be less than --b-max");
  if (a.steps < 2) throw UsageError("--steps must be at least 2");
  const double h = (a.b_max - a.b_min) / (a.steps - 1);
  std::vector<double> grid(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i) {
    double b = i + 1 == a.steps ? a.b_max : a.b_min + h * i;
    if (std::abs(b) <= 1e-12 * h) b = i == 0 ? 0.5 * h : -0.5 * h;
    grid[static_cast<std::size_t>(i)] = b;
  }
  return grid;
}

struct ScanRow {
  double b = 0.0;
  std::optional<StokesResult> result;
  std::string error;
};

std::vector<ScanRow> run_scan(const std::vector<double>& grid, const Settings& s) {
  std::vector<ScanRow> rows(grid.size());
  const unsigned jobs = std::min<unsigned>(effective_jobs(s), static_cast<unsigned>(grid.size()));
  StokesConfig config = s.stokes;
  if (jobs > 1) config.parallel = false;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i].b = grid[i];
      try {
        rows[i].result = compute_stokes(Cubic{0.0, grid[i]}, config);
      } catch (const Error& e) {
        rows[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

int cmd_scan(const ScanArgs& args, const Settings& s, const std::string& format,
             std::ostream& out) {
  const std::vector<ScanRow> rows = run_scan(scan_grid(args), s);
  if (format == "json") {
    json j = record_header("scan");
    j["input"] = {{"b_min", args.b_min}, {"b_max", args.b_max}, {"steps", args.steps}};
    j["mode"] = to_string(s.stokes.mode);
    json table = json::array();
    for (const auto& row : rows) {
      json r{{"b", row.b}};
      if (row.result) {
        r["sigma0"] = to_json((*row.result)[0]);
        r["rescaled"] = to_json(wkb::rescale_sigma0((*row.result)[0], row.b));
        r["rescaled_wkb"] = wkb::rescaled_prediction(row.b);
        r["residual"] = row.result->residual;
      } else {
        r["error"] = row.error;
      }
      table.push_back(std::move(r));
    }
    j["rows"] = std::move(table);
    print_json(out, j);
    return kExitOk;
  }
  write_csv_row(out, {"b", "sigma0_re", "sigma0_im", "rescaled_re", "rescaled_im", "rescaled_wkb",
                      "residual", "error"});
  for (const auto& row : rows) {
    std::vector<std::string> cells{format_double(row.b)};
    if (row.result) {
      append(cells, complex_cells((*row.result)[0]));
      append(cells, complex_cells(wkb::rescale_sigma0((*row.result)[0], row.b)));
      cells.push_back(format_double(wkb::rescaled_prediction(row.b)));
      cells.push_back(format_double(row.result->residual));
      cells.emplace_back();
    } else {
      cells.resize(7);
      cells.push_back(row.error);
    }
    write_csv_row(out, cells);
  }
  return kExitOk;
}

// --- isomonodromy ----------------------------------------------------------

struct IsoArgs {
  std::string z0 = "0", y0 = "1", yp0 = "0", z1 = "0.5";
  int samples = 3;
};

int cmd_isomonodromy(const IsoArgs& args, const Settings& s, const std::string& format,
                     std::ostream& out) {
  if (args.samples < 1) throw UsageError("--samples must be at least 1");
  const PIState start{parse_complex(args.z0), parse_complex(args.y0), parse_complex(args.yp0)};
  const IsomonodromyReport rep =
      isomonodromy_report(start, parse_complex(args.z1), args.samples, s.stokes);
  if (format == "csv") {
    std::vector<std::string> header{"z_re", "z_im", "y_re", "y_im", "yp_re", "yp_im"};
    append(header, sigma_header());
    append(header, {"residual", "deviation"});
    write_csv_row(out, header);
    for (std::size_t i = 0; i < rep.states.size(); ++i) {
      const auto& st = rep.states[i];
      const auto& r = rep.results[i];
      std::vector<std::string> row;
      append(row, complex_cells(st.z));
      append(row, complex_cells(st.y));
      append(row, complex_cells(st.y_prime));
      append_sigma(row, r);
      row.push_back(format_double(r.residual));
      double dev = 0.0;
      for (std::size_t k = 0; k < 5; ++k) {
        dev = std::max(dev, std::abs(r.sigma[k] - rep.results.front().sigma[k]));
      }
      row.push_back(format_double(dev));
      write_csv_row(out, row);
    }
    return kExitOk;
  }
  json j = record_header("isomonodromy");
  j["input"] = {{"z0", to_json(start.z)},
                {"y0", to_json(start.y)},
                {"yp0", to_json(start.y_prime)},
                {"z1", to_json(parse_complex(args.z1))},
                {"samples", args.samples}};
  j["max_deviation"] = rep.max_deviation;
  json samples = json::array();
  for (std::size_t i = 0; i < rep.states.size(); ++i) {
    json sigma = json::array();
    for (int k = -2; k <= 2; ++k) sigma.push_back(to_json(rep.results[i][k]));
    samples.push_back({{"z", to_json(rep.states[i].z)},
                       {"y", to_json(rep.states[i].y)},
                       {"yp", to_json(rep.states[i].y_prime)},
                       {"sigma", std::move(sigma)},
                       {"residual", rep.results[i].residual}});
  }
  j["samples"] = std::move(samples);
  print_json(out, j);
  return kExitOk;
}

// --- pole-limit ------------------------------------------------------------

struct PoleArgs {
  std::string pole = "0", coeff4 = "0";
  std::vector<double> distances{0.4, 0.2, 0.1};
};

int cmd_pole_limit(const PoleArgs& args, const Settings& s, const std::string& format,
                   std::ostream& out) {
  if (args.distances.empty()) throw UsageError("--distances needs at least one value");
  const PolePoint p{parse_complex(args.pole), parse_complex(args.coeff4)};
  const std::vector<double> dev = laurent_limit_check(p, args.distances, s.stokes);
  if (format == "csv") {
    write_csv_row(out, {"distance", "deviation"});
    for (std::size_t i = 0; i < dev.size(); ++i) {
      write_csv_row(out, {format_double(args.distances[i]), format_double(dev[i])});
    }
    return kExitOk;
  }
  json j = record_header("pole-limit");
  j["input"] = {{"pole", to_json(p.location)}, {"coeff4", to_json(p.coeff4)}};
  j["limit"] = to_json(Potential{pole_limit_potential(p)});
  json rows = json::array();
  for (std::size_t i = 0; i < dev.size(); ++i) {
    rows.push_back({{"distance", args.distances[i]}, {"deviation", dev[i]}});
  }
  j["deviations"] = std::move(rows);
  print_json(out, j);
  return kExitOk;
}

// --- selftest --------------------------------------------------------------

int cmd_selftest(std::ostream& out) {
  const auto outcomes = acceptance::run_all(out);
  const auto passed = std::count_if(outcomes.begin(), outcomes.end(),
                                    [](const acceptance::Outcome& o) { return o.passed; });
  out << passed << "/" << outcomes.size() << " criteria passed\n";
  return passed == static_cast<long>(outcomes.size()) ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stokes multipliers of the cubic and perturbed cubic oscillator", "stokes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::map<std::string, std::string> tunables;
  std::map<std::string, std::string> raw;
  for (const auto& key : setting_keys()) raw[key];
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  for (const auto& key : setting_keys()) {
    app.add_option(flag_name(key), raw[key], "override setting '" + key + "'");
  }
  std::string format;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Stokes multipliers of one potential");
  c->add_option("--a", compute.a, "cubic: coefficient a (re or re,im)");
  c->add_option("--b", compute.b, "cubic: coefficient b");
  c->add_option("--y", compute.y, "perturbed: y");
  c->add_option("--yp", compute.yp, "perturbed: y'");
  c->add_option("--z", compute.z, "perturbed: z");

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "sigma_0(b) over a grid of Cubic{0, b}");
  sc->add_option("--b-min", scan.b_min)->capture_default_str();
  sc->add_option("--b-max", scan.b_max)->capture_default_str();
  sc->add_option("--steps", scan.steps)->capture_default_str();

  IsoArgs iso;
  auto* is = app.add_subcommand("isomonodromy", "sigma along a Painleve-I segment");
  is->add_option("--z0", iso.z0)->capture_default_str();
  is->add_option("--y0", iso.y0)->capture_default_str();
  is->add_option("--yp0", iso.yp0)->capture_default_str();
  is->add_option("--z1", iso.z1)->capture_default_str();
  is->add_option("--samples", iso.samples)->capture_default_str();

  PoleArgs pole;
  auto* pl = app.add_subcommand("pole-limit", "approach of sigma to its cubic limit at a pole");
  pl->add_option("--pole", pole.pole)->capture_default_str();
  pl->add_option("--coeff4", pole.coeff4)->capture_default_str();
  pl->add_option("--distances", pole.distances)->delimiter(',')->capture_default_str();

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");

  for (auto* sub : {c, sc, is, pl, st}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) tunables["config"] = config_path;
    for (const auto& key : setting_keys()) {
      if (app.count(flag_name(key)) > 0) tunables[key] = raw[key];
    }
    const Settings s = resolve_settings(tunables, process_environment());

    if (*c) return cmd_compute(compute, s, format.empty() ? "json" : format, out);
    if (*sc) return cmd_scan(scan, s, format.empty() ? "csv" : format, out);
    if (*is) return cmd_isomonodromy(iso, s, format.empty() ? "json" : format, out);
    if (*pl) return cmd_pole_limit(pole, s, format.empty() ? "json" : format, out);
    return cmd_selftest(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical_failure(e.kind()) ? kExitNumerical : kExitUsage;
  }
}

}  // namespace stokes::cli
