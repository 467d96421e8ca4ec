#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poro/analytic.hpp"
#include "poro/harness.hpp"
#include "poro/ini.hpp"
#include "poro/solver.hpp"

namespace poro {

/// Axis-aligned block of cells [i_begin, i_end) x [j_begin, j_end).
struct RegionSpec {
  std::string material;
  int i_begin = 0;
  int i_end = 0;
  int j_begin = 0;
  int j_end = 0;
  int line = 0;
};

struct PlaneWaveParams {
  std::string material;
  WaveFamily family = WaveFamily::fast_p;
  double omega = 1e4;
  double theta_wave = 0.0;
  double periods = 1.0;
};

struct OutputSpec {
  bool binary = false;
  bool snapshots = true;
};

struct Scenario {
  std::string name = "custom";
  int nx = 0;
  int nz = 0;
  double x0 = 0.0;
  double z0 = 0.0;
  double lx = 0.0;
  double lz = 0.0;
  std::vector<std::pair<std::string, MaterialSpec>> materials;
  std::vector<RegionSpec> regions;
  SimConfig solver;
  std::optional<PlaneWaveParams> plane_wave;
  std::vector<int> converge_grids;
  OutputSpec output;
  bool long_running = false;

  const MaterialSpec* material(const std::string& name) const;
};

/// Throws ConfigError (with line numbers) on malformed or inconsistent input.
Scenario load_scenario(const IniDocument& doc);
Scenario load_scenario_file(const std::string& path);

std::optional<Scenario> scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

struct BuiltScenario {
  Grid2D grid;
  MaterialTable table;
  SimConfig config;
  AnalyticField analytic;
  std::optional<PlaneWaveMode> mode;
};

/// Materializes the grid, material table and initial data.
BuiltScenario build_scenario(const Scenario& s);

/// Convergence-study description of a plane-wave scenario.
PlaneWaveStudy plane_wave_study(const Scenario& s);

}  // namespace poro
