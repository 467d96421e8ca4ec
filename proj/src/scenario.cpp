#include "poro/scenario.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "poro/presets.hpp"

namespace poro {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void reject_unknown(const IniSection& sec, const std::set<std::string>& allowed) {
  for (const auto& e : sec.entries) {
    if (!allowed.count(e.key)) {
      throw ConfigError("unknown key '" + e.key + "' in [" + sec.name + "]", e.line);
    }
  }
}

void read_material_fields(const IniSection& sec, MaterialSpec& m) {
  const std::map<std::string, double MaterialSpec::*> fields = {
      {"K_s", &MaterialSpec::K_s},       {"rho_s", &MaterialSpec::rho_s},
      {"c11", &MaterialSpec::c11},       {"c12", &MaterialSpec::c12},
      {"c13", &MaterialSpec::c13},       {"c33", &MaterialSpec::c33},
      {"c55", &MaterialSpec::c55},       {"phi", &MaterialSpec::phi},
      {"kappa1", &MaterialSpec::kappa1}, {"kappa3", &MaterialSpec::kappa3},
      {"T1", &MaterialSpec::T1},         {"T3", &MaterialSpec::T3},
      {"K_f", &MaterialSpec::K_f},       {"rho_f", &MaterialSpec::rho_f},
      {"eta", &MaterialSpec::eta},       {"theta_mat", &MaterialSpec::theta_mat},
  };
  std::set<std::string> allowed{"preset", "theta_mat_deg"};
  for (const auto& [k, _] : fields) allowed.insert(k);
  reject_unknown(sec, allowed);

  if (const IniEntry* p = sec.find("preset")) {
    auto base = material_preset(p->value);
    if (!base) throw ConfigError("unknown material preset '" + p->value + "'", p->line);
    m = *base;
  }
  for (const auto& e : sec.entries) {
    auto it = fields.find(e.key);
    if (it != fields.end()) m.*(it->second) = to_double(e);
  }
  if (const IniEntry* d = sec.find("theta_mat_deg")) {
    if (sec.find("theta_mat")) throw ConfigError("give theta_mat or theta_mat_deg, not both", d->line);
    m.theta_mat = to_double(*d) * kDeg;
  }
}

BoundaryKind boundary_value(const IniEntry& e) {
  auto b = parse_boundary(e.value);
  if (!b) throw ConfigError("'" + e.key + "' must be extrapolate or analytic_dirichlet", e.line);
  return *b;
}

}  // namespace

const MaterialSpec* Scenario::material(const std::string& n) const {
  for (const auto& [name, spec] : materials) {
    if (name == n) return &spec;
  }
  return nullptr;
}

Scenario load_scenario(const IniDocument& doc) {
  Scenario s;
  const std::set<std::string> known_sections{"scenario", "solver", "output", "plane_wave", "converge"};
  for (const auto& sec : doc.sections) {
    const auto dot = sec.name.find('.');
    const std::string head = sec.name.substr(0, dot);
    const bool prefixed = head == "material" || head == "region" || head == "source" || head == "gauge";
    if (prefixed ? dot == std::string::npos || dot + 1 == sec.name.size()
                 : !known_sections.count(sec.name)) {
      throw ConfigError("unknown section [" + sec.name + "]", sec.line);
    }
  }

  const IniSection* sc = doc.find("scenario");
  if (!sc) throw ConfigError("missing [scenario] section");
  reject_unknown(*sc, {"name", "nx", "nz", "x0", "z0", "lx", "lz", "long_running"});
  if (const IniEntry* e = sc->find("name")) {
    static const std::set<std::string> names{"plane_wave", "point_source", "two_layer", "custom"};
    if (!names.count(e->value)) {
      throw ConfigError("scenario name must be plane_wave, point_source, two_layer or custom", e->line);
    }
    s.name = e->value;
  }
  auto need = [&](const IniSection& sec, const char* key) -> const IniEntry& {
    const IniEntry* e = sec.find(key);
    if (!e) throw ConfigError(std::string("missing '") + key + "' in [" + sec.name + "]", sec.line);
    return *e;
  };
  s.nx = to_int(need(*sc, "nx"));
  s.nz = to_int(need(*sc, "nz"));
  s.lx = to_double(need(*sc, "lx"));
  s.lz = to_double(need(*sc, "lz"));
  if (s.nx <= 0 || s.nz <= 0) throw ConfigError("nx and nz must be positive", sc->line);
  if (!(s.lx > 0) || !(s.lz > 0)) throw ConfigError("lx and lz must be positive", sc->line);
  if (const IniEntry* e = sc->find("long_running")) s.long_running = to_bool(*e);

  for (const IniSection* sec : doc.with_prefix("material")) {
    MaterialSpec m;
    read_material_fields(*sec, m);
    const std::string name = sec->name.substr(9);
    try {
      derive_coefficients(m);
    } catch (const MaterialError& err) {
      throw ConfigError("material '" + name + "': " + err.what(), sec->line);
    }
    s.materials.emplace_back(name, m);
  }
  if (s.materials.empty()) throw ConfigError("no [material.<name>] section");

  for (const IniSection* sec : doc.with_prefix("region")) {
    reject_unknown(*sec, {"material", "i_begin", "i_end", "j_begin", "j_end"});
    RegionSpec r;
    r.line = sec->line;
    r.material = need(*sec, "material").value;
    if (!s.material(r.material)) {
      throw ConfigError("region uses undefined material '" + r.material + "'", need(*sec, "material").line);
    }
    r.i_begin = to_int(need(*sec, "i_begin"));
    r.i_end = to_int(need(*sec, "i_end"));
    r.j_begin = to_int(need(*sec, "j_begin"));
    r.j_end = to_int(need(*sec, "j_end"));
    if (r.i_begin < 0 || r.j_begin < 0 || r.i_end > s.nx || r.j_end > s.nz ||
        r.i_begin >= r.i_end || r.j_begin >= r.j_end) {
      throw ConfigError("region [" + sec->name + "] is empty or outside the grid", sec->line);
    }
    s.regions.push_back(r);
  }

  if (const IniSection* pw = doc.find("plane_wave")) {
    reject_unknown(*pw, {"material", "family", "omega", "theta_wave", "theta_wave_deg", "periods"});
    PlaneWaveParams p;
    p.material = need(*pw, "material").value;
    if (!s.material(p.material)) {
      throw ConfigError("plane wave uses undefined material '" + p.material + "'", need(*pw, "material").line);
    }
    const IniEntry& fam = need(*pw, "family");
    auto f = parse_family(fam.value);
    if (!f) throw ConfigError("family must be fast_p, s or slow_p", fam.line);
    p.family = *f;
    p.omega = to_double(need(*pw, "omega"));
    if (!(p.omega > 0)) throw ConfigError("omega must be positive", need(*pw, "omega").line);
    if (const IniEntry* e = pw->find("theta_wave")) p.theta_wave = to_double(*e);
    if (const IniEntry* e = pw->find("theta_wave_deg")) p.theta_wave = to_double(*e) * kDeg;
    if (const IniEntry* e = pw->find("periods")) p.periods = to_double(*e);
    s.plane_wave = p;
  }
  if (s.name == "plane_wave" && !s.plane_wave) {
    throw ConfigError("plane_wave scenario needs a [plane_wave] section", sc->line);
  }

  const bool pw = s.plane_wave.has_value();
  s.x0 = pw ? -0.5 * s.lx : 0.0;
  s.z0 = pw ? -0.5 * s.lz : 0.0;
  if (const IniEntry* e = sc->find("x0")) s.x0 = to_double(*e);
  if (const IniEntry* e = sc->find("z0")) s.z0 = to_double(*e);
  if (pw) s.solver.bc.fill(BoundaryKind::analytic_dirichlet);
  s.solver.limiter = pw ? Limiter::none : Limiter::mc;

  bool have_t_final = false;
  if (const IniSection* so = doc.find("solver")) {
    reject_unknown(*so, {"cfl_target", "limiter", "splitting", "transverse", "t_final", "bc", "bc_left",
                         "bc_right", "bc_bottom", "bc_top", "snapshot_times"});
    if (const IniEntry* e = so->find("cfl_target")) s.solver.cfl_target = to_double(*e);
    if (const IniEntry* e = so->find("limiter")) {
      auto l = parse_limiter(e->value);
      if (!l) throw ConfigError("limiter must be none, minmod, superbee or mc", e->line);
      s.solver.limiter = *l;
    }
    if (const IniEntry* e = so->find("splitting")) {
      auto sp = parse_splitting(e->value);
      if (!sp) throw ConfigError("splitting must be godunov or strang", e->line);
      s.solver.splitting = *sp;
    }
    if (const IniEntry* e = so->find("transverse")) s.solver.transverse = to_bool(*e);
    if (const IniEntry* e = so->find("t_final")) {
      s.solver.t_final = to_double(*e);
      have_t_final = true;
    }
    if (const IniEntry* e = so->find("bc")) s.solver.bc.fill(boundary_value(*e));
    const std::pair<const char*, Edge> edges[] = {
        {"bc_left", kLeft}, {"bc_right", kRight}, {"bc_bottom", kBottom}, {"bc_top", kTop}};
    for (const auto& [key, edge] : edges) {
      if (const IniEntry* e = so->find(key)) s.solver.bc[edge] = boundary_value(*e);
    }
    if (const IniEntry* e = so->find("snapshot_times")) s.solver.snapshot_times = to_double_list(*e);
    try {
      s.solver.validate();
    } catch (const SolverError& err) {
      throw ConfigError(err.what(), so->line);
    }
  }
  if (!have_t_final && pw) {
    s.solver.t_final = s.plane_wave->periods * 2.0 * std::numbers::pi / s.plane_wave->omega;
  }
  if (!pw) {
    for (auto b : s.solver.bc) {
      if (b == BoundaryKind::analytic_dirichlet) {
        throw ConfigError("analytic_dirichlet boundaries need a [plane_wave] section");
      }
    }
  }

  for (const IniSection* sec : doc.with_prefix("source")) {
    reject_unknown(*sec, {"x", "z", "f_peak", "t_peak", "amp_tau_zz", "amp_p"});
    PointSource p;
    p.x = to_double(need(*sec, "x"));
    p.z = to_double(need(*sec, "z"));
    p.f_peak = to_double(need(*sec, "f_peak"));
    p.t_peak = to_double(need(*sec, "t_peak"));
    if (const IniEntry* e = sec->find("amp_tau_zz")) p.amp_tau_zz = to_double(*e);
    if (const IniEntry* e = sec->find("amp_p")) p.amp_p = to_double(*e);
    if (!(p.f_peak > 0)) throw ConfigError("f_peak must be positive", need(*sec, "f_peak").line);
    if (p.x < s.x0 || p.x > s.x0 + s.lx || p.z < s.z0 || p.z > s.z0 + s.lz) {
      throw ConfigError("source [" + sec->name + "] lies outside the domain", sec->line);
    }
    s.solver.sources.push_back(p);
  }
  for (const IniSection* sec : doc.with_prefix("gauge")) {
    reject_unknown(*sec, {"x", "z"});
    GaugeSpec g{sec->name.substr(6), to_double(need(*sec, "x")), to_double(need(*sec, "z"))};
    if (g.x < s.x0 || g.x > s.x0 + s.lx || g.z < s.z0 || g.z > s.z0 + s.lz) {
      throw ConfigError("gauge [" + sec->name + "] lies outside the domain", sec->line);
    }
    s.solver.gauges.push_back(g);
  }
  if (const IniSection* out = doc.find("output")) {
    reject_unknown(*out, {"binary", "snapshots"});
    if (const IniEntry* e = out->find("binary")) s.output.binary = to_bool(*e);
    if (const IniEntry* e = out->find("snapshots")) s.output.snapshots = to_bool(*e);
  }
  if (const IniSection* cv = doc.find("converge")) {
    reject_unknown(*cv, {"grids"});
    const IniEntry& g = need(*cv, "grids");
    s.converge_grids = to_int_list(g);
    for (int n : s.converge_grids) {
      if (n <= 0) throw ConfigError("grid sizes must be positive", g.line);
    }
  }

  if (s.regions.empty() && s.materials.size() > 1) {
    throw ConfigError("several materials defined but no [region.<n>] assigns them");
  }
  if (!s.regions.empty()) {
    std::vector<int> cover(static_cast<std::size_t>(s.nx) * s.nz, 0);
    for (const auto& r : s.regions) {
      for (int j = r.j_begin; j < r.j_end; ++j) {
        for (int i = r.i_begin; i < r.i_end; ++i) {
          if (++cover[static_cast<std::size_t>(j) * s.nx + i] > 1) {
            throw ConfigError("regions overlap at cell (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")",
                              r.line);
          }
        }
      }
    }
    for (std::size_t c = 0; c < cover.size(); ++c) {
      if (cover[c] == 0) {
        throw ConfigError("regions do not cover cell (" + std::to_string(c % s.nx) + ", " +
                          std::to_string(c / s.nx) + ")");
      }
    }
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  return load_scenario(parse_ini_file(path));
}

namespace {

Scenario plane_wave_base(const std::string& mat_name, MaterialSpec spec, WaveFamily fam,
                         double omega, double domain, int n) {
  Scenario s;
  s.name = "plane_wave";
  s.nx = s.nz = n;
  s.lx = s.lz = domain;
  s.x0 = s.z0 = -0.5 * domain;
  s.materials.emplace_back(mat_name, spec);
  s.plane_wave = PlaneWaveParams{mat_name, fam, omega, 0.0, 1.0};
  s.solver.limiter = Limiter::none;
  s.solver.splitting = Splitting::strang;
  s.solver.bc.fill(BoundaryKind::analytic_dirichlet);
  s.solver.t_final = 2.0 * std::numbers::pi / omega;
  s.solver.snapshot_times = {s.solver.t_final};
  s.converge_grids = {50, 100, 200};
  return s;
}

Scenario two_layer(int nx, int nz) {
  Scenario s;
  s.name = "two_layer";
  s.nx = nx;
  s.nz = nz;
  s.lx = 1500.0;
  s.lz = 1400.0;
  s.materials.emplace_back("shale_iso", *material_preset("shale_iso"));
  s.materials.emplace_back("sandstone_iso", *material_preset("sandstone_iso"));
  const int j_interface = nz / 2;
  s.regions.push_back(RegionSpec{"shale_iso", 0, nx, 0, j_interface, 0});
  s.regions.push_back(RegionSpec{"sandstone_iso", 0, nx, j_interface, nz, 0});
  s.solver.limiter = Limiter::mc;
  s.solver.t_final = 0.5;
  s.solver.snapshot_times = {0.25, 0.5};
  s.solver.sources.push_back(PointSource{750.0, 900.0, 50.0, 0.04, 2.3e13, -2.3e13});
  s.solver.gauges = {{"1", 950.0, 750.0}, {"2", 950.0, 650.0}, {"3", 950.0, 500.0}};
  return s;
}

using PresetFactory = std::function<Scenario()>;

const std::vector<std::pair<std::string, PresetFactory>>& preset_table() {
  static const std::vector<std::pair<std::string, PresetFactory>> table = {
      {"plane_wave",
       [] {
         MaterialSpec m = *material_preset("sandstone_ortho");
         m.eta = 0.0;
         return plane_wave_base("sandstone_inviscid", m, WaveFamily::fast_p, 1e4, 8.0, 100);
       }},
      {"plane_wave_viscous",
       [] {
         Scenario s = plane_wave_base("sandstone_ortho", *material_preset("sandstone_ortho"),
                                      WaveFamily::fast_p, 2.0 * std::numbers::pi * 1e4, 1.2, 100);
         s.plane_wave->periods = 1.25;
         s.solver.t_final = 1.25e-4;
         s.solver.snapshot_times = {s.solver.t_final};
         return s;
       }},
      {"plane_wave_viscous_slow_p",
       [] {
         MaterialSpec m = *material_preset("sandstone_ortho");
         Scenario s = plane_wave_base("sandstone_ortho", m, WaveFamily::slow_p,
                                      2.0 * std::numbers::pi * 10.0, 1.0, 100);
         // 1.25 fast-P crossing times of the domain.
         const Material mat = make_material("sandstone_ortho", m);
         s.solver.t_final = 1.25 * 1.0 / wave_speeds(mat.matrices, 1.0, 0.0).fast_p;
         s.solver.snapshot_times = {s.solver.t_final};
         return s;
       }},
      {"point_source",
       [] {
         Scenario s;
         s.name = "point_source";
         s.nx = s.nz = 125;
         s.lx = s.lz = 18.7;
         s.materials.emplace_back("sandstone_ortho", *material_preset("sandstone_ortho"));
         s.solver.limiter = Limiter::mc;
         s.solver.t_final = 1.56e-3;
         s.solver.snapshot_times = {1.56e-3};
         s.solver.sources.push_back(PointSource{9.35, 9.35, 3730.0, 4e-4, 1.0, -1.0});
         return s;
       }},
      {"two_layer", [] { return two_layer(150, 140); }},
      {"two_layer_full",
       [] {
         Scenario s = two_layer(1800, 1680);
         s.long_running = true;
         return s;
       }},
  };
  return table;
}

}  // namespace

std::optional<Scenario> scenario_preset(const std::string& name) {
  for (const auto& [n, make] : preset_table()) {
    if (n == name) return make();
  }
  return std::nullopt;
}

std::vector<std::string> scenario_preset_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : preset_table()) out.push_back(n);
  return out;
}

BuiltScenario build_scenario(const Scenario& s) {
  std::vector<Material> mats;
  std::map<std::string, int> ids;
  for (const auto& [name, spec] : s.materials) {
    ids[name] = static_cast<int>(mats.size());
    mats.push_back(make_material(name, spec));
  }
  Grid2D grid(s.nx, s.nz, s.x0, s.z0, s.lx / s.nx, s.lz / s.nz);
  for (const auto& r : s.regions) {
    for (int j = r.j_begin; j < r.j_end; ++j) {
      for (int i = r.i_begin; i < r.i_end; ++i) grid.set_material(i, j, ids.at(r.material));
    }
  }
  grid.sync_ghost_materials();

  BuiltScenario b{std::move(grid), MaterialTable(mats), s.solver, {}, std::nullopt};
  if (s.plane_wave) {
    const PlaneWaveParams& p = *s.plane_wave;
    const Material& m = mats.at(ids.at(p.material));
    PlaneWaveMode mode = solve_plane_wave(m, p.omega, std::cos(p.theta_wave), std::sin(p.theta_wave),
                                          p.family);
    mode.x_ref = s.x0 + 0.5 * s.lx;
    mode.z_ref = s.z0 + 0.5 * s.lz;
    for (int j = 0; j < s.nz; ++j) {
      for (int i = 0; i < s.nx; ++i) {
        b.grid.q(i, j) = evaluate_plane_wave(mode, b.grid.xc(i), b.grid.zc(j), 0.0);
      }
    }
    b.analytic = [mode](double x, double z, double t) { return evaluate_plane_wave(mode, x, z, t); };
    b.mode = mode;
  }
  return b;
}

PlaneWaveStudy plane_wave_study(const Scenario& s) {
  if (!s.plane_wave) throw ConfigError("convergence studies need a plane_wave scenario");
  if (s.lx != s.lz) throw ConfigError("convergence studies need a square domain");
  if (s.x0 != -0.5 * s.lx || s.z0 != -0.5 * s.lz) {
    throw ConfigError("convergence studies need a domain centred on the origin");
  }
  const PlaneWaveParams& p = *s.plane_wave;
  PlaneWaveStudy st;
  st.material_name = p.material;
  st.spec = *s.material(p.material);
  st.family = p.family;
  st.omega = p.omega;
  st.theta_wave = p.theta_wave;
  st.domain = s.lx;
  st.t_final = s.solver.t_final;
  st.limiter = s.solver.limiter;
  st.splitting = s.solver.splitting;
  st.cfl = s.solver.cfl_target;
  st.transverse = s.solver.transverse;
  st.workers = s.solver.workers;
  return st;
}

}  // namespace poro
