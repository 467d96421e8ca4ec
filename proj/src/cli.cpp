#include "poro/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "poro/harness.hpp"
#include "poro/io.hpp"
#include "poro/presets.hpp"
#include "poro/scenario.hpp"
#include "poro/verify.hpp"

namespace poro {

namespace fs = std::filesystem;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Options {
  std::string config;
  std::string preset;
  int workers = 1;
  std::string out_dir = ".";
  std::vector<std::string> materials;
  std::string angles;
  std::string sweep;
  std::string grids;
};

Scenario resolve_scenario(const Options& o) {
  if (o.config.empty() == o.preset.empty()) {
    throw ConfigError("give exactly one of --config or --preset");
  }
  Scenario s;
  if (!o.config.empty()) {
    s = load_scenario_file(o.config);
  } else {
    auto p = scenario_preset(o.preset);
    if (!p) {
      std::string names;
      for (const auto& n : scenario_preset_names()) names += " " + n;
      throw ConfigError("unknown preset '" + o.preset + "' (available:" + names + ")");
    }
    s = *p;
  }
  if (o.workers < 1) throw ConfigError("--workers must be at least 1");
  s.solver.workers = o.workers;
  return s;
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

std::string snapshot_name(std::size_t k) {
  std::ostringstream os;
  os << "snapshot_" << std::setw(3) << std::setfill('0') << k;
  return os.str();
}

int cmd_run(const Options& o, std::ostream& out) {
  Scenario s = resolve_scenario(o);
  if (s.long_running) out << "note: this scenario is long-running at full resolution\n";
  if (s.output.snapshots && s.solver.snapshot_times.empty()) s.solver.snapshot_times = {s.solver.t_final};
  if (s.solver.t_final == 0.0) s.solver.snapshot_times = {0.0};
  if (!s.output.snapshots) s.solver.snapshot_times.clear();
  const fs::path dir = prepare_out_dir(o.out_dir);

  BuiltScenario b = build_scenario(s);
  Solver solver(std::move(b.grid), std::move(b.table), b.config);
  if (b.analytic) solver.set_analytic(b.analytic);
  const RunResult res = solver.run();

  nlohmann::ordered_json manifest;
  manifest["scenario"] = s.name;
  manifest["source"] = o.config.empty() ? "preset:" + o.preset : o.config;
  manifest["nx"] = s.nx;
  manifest["nz"] = s.nz;
  manifest["workers"] = o.workers;
  manifest["limiter"] = to_string(s.solver.limiter);
  manifest["splitting"] = to_string(s.solver.splitting);
  manifest["transverse"] = s.solver.transverse;
  manifest["cfl_target"] = s.solver.cfl_target;
  manifest["max_cfl"] = res.max_cfl;
  manifest["t_final"] = s.solver.t_final;
  manifest["t_end"] = res.t_end;
  manifest["steps"] = res.steps;
  manifest["dt_history"] = res.dt_history;
  auto& snaps = manifest["snapshots"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
    const std::string base = snapshot_name(k);
    write_snapshot((dir / (base + ".txt")).string(), res.snapshots[k]);
    nlohmann::ordered_json entry{{"file", base + ".txt"}, {"t", res.snapshots[k].t}};
    if (s.output.binary) {
      write_snapshot_binary((dir / (base + ".bin")).string(), res.snapshots[k]);
      entry["binary"] = base + ".bin";
    }
    snaps.push_back(entry);
  }
  auto& gauges = manifest["gauges"] = nlohmann::ordered_json::array();
  for (const auto& g : res.gauges) {
    const std::string file = "gauge_" + g.gauge.name + ".csv";
    write_gauge_csv((dir / file).string(), g);
    gauges.push_back({{"name", g.gauge.name}, {"x", g.gauge.x}, {"z", g.gauge.z}, {"file", file}});
  }
  manifest["wall_seconds"] = res.wall_seconds;
  write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  out << "run " << s.name << ": " << res.steps << " steps to t = " << format_double(res.t_end)
      << ", max CFL " << res.max_cfl << ", " << res.snapshots.size() << " snapshots, "
      << res.gauges.size() << " gauges -> " << dir.string() << '\n';
  return kExitOk;
}

std::vector<int> parse_grid_list(const std::string& text) {
  IniEntry e{"--grids", text, 0};
  return to_int_list(e);
}

int cmd_converge(const Options& o, std::ostream& out) {
  Scenario s = resolve_scenario(o);
  if (!s.plane_wave) throw ConfigError("converge needs a plane_wave scenario");
  if (!o.grids.empty()) s.converge_grids = parse_grid_list(o.grids);
  if (s.converge_grids.size() < 3) {
    throw ConfigError("insufficient points for fit: converge needs at least 3 grid sizes");
  }
  const PlaneWaveStudy study = plane_wave_study(s);
  std::vector<PlaneWaveRun> runs;
  const ErrorReport rep = run_convergence(study, s.converge_grids, &runs);

  std::ostringstream txt;
  txt << "convergence: " << study.material_name << ' ' << to_string(study.family)
      << " omega=" << study.omega << " theta_wave=" << study.theta_wave / kDeg << "deg"
      << " splitting=" << to_string(study.splitting) << " limiter=" << to_string(study.limiter) << '\n';
  txt << std::setw(6) << "m" << std::setw(16) << "grid-1" << std::setw(16) << "grid-2"
      << std::setw(16) << "max" << std::setw(8) << "steps" << '\n';
  KeyValues kv;
  for (std::size_t i = 0; i < rep.m.size(); ++i) {
    const auto& g = rep.norms[i];
    txt << std::setw(6) << rep.m[i] << std::scientific << std::setprecision(6) << std::setw(16) << g.n1
        << std::setw(16) << g.n2 << std::setw(16) << g.nmax << std::defaultfloat << std::setw(8)
        << runs[i].steps << '\n';
    const std::string k = "grid." + std::to_string(i) + ".";
    kv[k + "m"] = std::to_string(rep.m[i]);
    kv[k + "n1"] = format_double(g.n1);
    kv[k + "n2"] = format_double(g.n2);
    kv[k + "nmax"] = format_double(g.nmax);
    kv[k + "steps"] = std::to_string(runs[i].steps);
  }
  txt << std::fixed << std::setprecision(4) << "rate  " << rep.fit1.rate << "  " << rep.fit2.rate
      << "  " << rep.fitmax.rate << '\n'
      << "R^2   " << rep.fit1.r2 << "  " << rep.fit2.r2 << "  " << rep.fitmax.r2 << '\n';
  kv["rate.n1"] = format_double(rep.fit1.rate);
  kv["rate.n2"] = format_double(rep.fit2.rate);
  kv["rate.nmax"] = format_double(rep.fitmax.rate);
  kv["r2.n1"] = format_double(rep.fit1.r2);
  kv["r2.n2"] = format_double(rep.fit2.r2);
  kv["r2.nmax"] = format_double(rep.fitmax.r2);

  const fs::path dir = prepare_out_dir(o.out_dir);
  write_text((dir / "convergence.txt").string(), txt.str());
  write_kv((dir / "convergence.kv").string(), kv);
  out << txt.str();
  return kExitOk;
}

std::vector<std::pair<std::string, MaterialSpec>> resolve_materials(const Options& o) {
  std::vector<std::pair<std::string, MaterialSpec>> mats;
  std::optional<Scenario> s;
  if (!o.config.empty()) s = load_scenario_file(o.config);
  auto lookup = [&](const std::string& name) {
    if (s) {
      if (const MaterialSpec* m = s->material(name)) return *m;
    }
    if (auto p = material_preset(name)) return *p;
    throw ConfigError("unknown material '" + name + "'");
  };
  if (!o.materials.empty()) {
    for (const auto& n : o.materials) mats.emplace_back(n, lookup(n));
  } else if (s) {
    mats = s->materials;
  } else {
    for (const auto& n : material_preset_names()) mats.emplace_back(n, *material_preset(n));
  }
  for (const auto& [name, spec] : mats) {
    try {
      spec.validate();
      derive_coefficients(spec);
    } catch (const MaterialError& e) {
      throw ConfigError("material '" + name + "': " + e.what());
    }
  }
  return mats;
}

std::vector<double> resolve_angles(const Options& o) {
  if (!o.sweep.empty()) {
    std::vector<double> parts;
    std::stringstream ss(o.sweep);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(to_double(IniEntry{"--sweep", item, 0}));
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
      throw ConfigError("--sweep expects start:stop:step in degrees");
    }
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (int k = 0; k <= n; ++k) out.push_back(parts[0] + k * parts[2]);
    return out;
  }
  if (!o.angles.empty()) return to_double_list(IniEntry{"--angles", o.angles, 0});
  return {0.0, 90.0};
}

int cmd_speeds(const Options& o, std::ostream& out) {
  const auto mats = resolve_materials(o);
  const auto angles = resolve_angles(o);
  std::optional<fs::path> dir;
  if (!o.out_dir.empty() && o.out_dir != ".") dir = prepare_out_dir(o.out_dir);
  for (const auto& [name, spec] : mats) {
    const Material m = make_material(name, spec);
    const ReducedSystem rs = reduce_system(m);
    std::ostringstream csv;
    csv << "material,angle_deg,c_pf,c_s,c_ps,lambda1,lambda2,tau_d1,tau_d3\n";
    const std::string td1 = m.coeffs.tau_d1 ? format_double(*m.coeffs.tau_d1) : "inf";
    const std::string td3 = m.coeffs.tau_d3 ? format_double(*m.coeffs.tau_d3) : "inf";
    for (double a : angles) {
      const double nx = std::cos(a * kDeg), nz = std::sin(a * kDeg);
      const WaveSpeeds w = wave_speeds(m.matrices, nx, nz);
      const ReducedSpeeds r = reduced_speeds(rs, nx, nz);
      csv << name << ',' << format_double(a) << ',' << format_double(w.fast_p) << ','
          << format_double(w.s) << ',' << format_double(w.slow_p) << ',' << format_double(r.lambda1)
          << ',' << format_double(r.lambda2) << ',' << td1 << ',' << td3 << '\n';
    }
    out << csv.str();
    if (dir) write_text((*dir / ("speeds_" + name + ".csv")).string(), csv.str());
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto mats = resolve_materials(o);
  std::optional<fs::path> dir;
  if (!o.out_dir.empty() && o.out_dir != ".") dir = prepare_out_dir(o.out_dir);
  bool all_ok = true;
  for (const auto& [name, spec] : mats) {
    const Material m = make_material(name, spec);
    std::vector<double> angles;
    for (int d = 0; d <= 90; ++d) angles.push_back(d * kDeg + spec.theta_mat);
    const CheckReport h = check_hyperbolicity(m.matrices);
    const CheckReport e = check_entropy_conditions(m.matrices);
    const SubcharacteristicReport sc = check_subcharacteristic(m, angles);
    out << "== " << name << '\n' << h.to_text() << e.to_text() << sc.report.to_text();
    all_ok = all_ok && h.ok() && e.ok() && sc.report.ok();
    if (dir) {
      write_text((*dir / ("check_" + name + ".kv")).string(),
                 h.to_kv() + e.to_kv() + sc.report.to_kv());
    }
  }
  out << (all_ok ? "all checks passed\n" : "check failures reported\n");
  return all_ok ? kExitOk : kExitCheck;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"poro2d: finite volume poroelastic wave simulator"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run a scenario and write snapshots, gauges and a manifest");
  auto* conv = app.add_subcommand("converge", "plane-wave grid convergence study");
  auto* speeds = app.add_subcommand("speeds", "wave speeds per propagation angle as CSV");
  auto* check = app.add_subcommand("check", "structural checks of material systems");
  for (auto* sub : {run, conv}) {
    sub->add_option("--config", o.config, "scenario config file");
    sub->add_option("--preset", o.preset, "built-in scenario name");
    sub->add_option("--workers", o.workers, "solver worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", o.out_dir, "output directory");
  }
  conv->add_option("--grids", o.grids, "comma-separated grid sizes, overriding the config");
  for (auto* sub : {speeds, check}) {
    sub->add_option("--config", o.config, "config file with [material.<name>] sections");
    sub->add_option("--material", o.materials, "material name (preset or config)");
    sub->add_option("--out-dir", o.out_dir, "write files to this directory");
    sub->add_option("--workers", o.workers, "ignored")->check(CLI::PositiveNumber);
  }
  speeds->add_option("--angles", o.angles, "comma-separated angles in degrees");
  speeds->add_option("--sweep", o.sweep, "start:stop:step in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(o, out);
    if (*conv) return cmd_converge(o, out);
    if (*speeds) return cmd_speeds(o, out);
    if (*check) return cmd_check(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const MaterialError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace poro
