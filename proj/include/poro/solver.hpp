#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poro/grid.hpp"
#include "poro/material.hpp"
#include "poro/riemann.hpp"

namespace poro {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Limiter { none, minmod, superbee, mc };
enum class Splitting { godunov, strang };
enum class BoundaryKind { extrapolate, analytic_dirichlet };
enum Edge : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

std::optional<Limiter> parse_limiter(std::string_view s);
std::optional<Splitting> parse_splitting(std::string_view s);
std::optional<BoundaryKind> parse_boundary(std::string_view s);
const char* to_string(Limiter l);
const char* to_string(Splitting s);
const char* to_string(BoundaryKind b);

/// Limiter function phi(theta).
double limiter_phi(Limiter l, double theta);

/// Ricker wavelet with peak frequency f, normalized to 1 at t0.
double ricker(double t, double f_peak, double t0);

struct PointSource {
  double x = 0.0;
  double z = 0.0;
  double f_peak = 0.0;
  double t_peak = 0.0;
  double amp_tau_zz = 0.0;
  double amp_p = 0.0;
};

struct GaugeSpec {
  std::string name;
  double x = 0.0;
  double z = 0.0;
};

struct GaugeRecord {
  GaugeSpec gauge;
  int i = 0;
  int j = 0;
  std::vector<double> times;
  std::vector<StateVector> samples;
};

struct SimConfig {
  double cfl_target = 0.9;
  Limiter limiter = Limiter::mc;
  Splitting splitting = Splitting::strang;
  bool transverse = true;
  double t_final = 0.0;
  std::array<BoundaryKind, 4> bc{BoundaryKind::extrapolate, BoundaryKind::extrapolate,
                                 BoundaryKind::extrapolate, BoundaryKind::extrapolate};
  std::vector<PointSource> sources;
  std::vector<GaugeSpec> gauges;
  std::vector<double> snapshot_times;
  int workers = 1;

  /// Throws SolverError when the CFL target exceeds the scheme's stability bound.
  void validate() const;
};

/// Per-material eigenbases and the interface operators of adjacent pairs.
class MaterialTable {
 public:
  MaterialTable() = default;
  explicit MaterialTable(std::vector<Material> materials);

  int size() const { return static_cast<int>(materials_.size()); }
  const Material& material(int id) const { return materials_.at(id); }
  const std::vector<Material>& materials() const { return materials_; }
  const WaveBasis& basis(int id, Axis a) const;
  double max_speed(int id, Axis a) const { return basis(id, a).max_speed(); }

  /// Builds operators for every ordered pair that meets across a cell edge,
  /// ghost frame included. Cheap to call again.
  void prepare_interfaces(const Grid2D& grid);
  const InterfaceOperator& interface(int left, int right, Axis a) const;
  bool has_interface(int left, int right, Axis a) const;

 private:
  std::vector<Material> materials_;
  std::vector<WaveBasis> basis_x_;
  std::vector<WaveBasis> basis_z_;
  std::vector<std::optional<InterfaceOperator>> ops_x_;
  std::vector<std::optional<InterfaceOperator>> ops_z_;
};

/// dt = cfl / max over interior cells of (c_x/dx, c_z/dz).
double compute_dt(const Grid2D& grid, const MaterialTable& table, double cfl_target);

/// Largest characteristic speed per unit cell size over the interior.
double max_inverse_transit(const Grid2D& grid, const MaterialTable& table);

/// Exact relaxation operator exp(D h) for one material, in global axes.
Mat8 relaxation_operator(const Material& m, double h);

/// Total mechanical energy, sum of Q^T E Q / 2 times cell area, over the interior.
double grid_energy(const Grid2D& grid, const MaterialTable& table);

using AnalyticField = std::function<StateVector(double x, double z, double t)>;

struct Snapshot {
  double t = 0.0;
  Grid2D grid;
};

struct RunResult {
  std::vector<GaugeRecord> gauges;
  std::vector<Snapshot> snapshots;
  std::vector<double> dt_history;
  double max_cfl = 0.0;
  double t_end = 0.0;
  int steps = 0;
  double wall_seconds = 0.0;
};

class Solver {
 public:
  Solver(Grid2D grid, MaterialTable table, SimConfig config);

  void set_analytic(AnalyticField field) { analytic_ = std::move(field); }

  Grid2D& grid() { return grid_; }
  const Grid2D& grid() const { return grid_; }
  const MaterialTable& table() const { return table_; }
  const SimConfig& config() const { return config_; }

  double compute_dt() const { return poro::compute_dt(grid_, table_, config_.cfl_target); }

  void fill_ghost(double t);
  void hyperbolic_step(double dt);
  /// Exact viscous decay over h; ghosts included on request.
  void relax(double h, bool include_ghosts);
  /// Point-source injection over [t, t + h] with midpoint sampling.
  void apply_point_sources(double t, double h);
  /// One split step from t to t + dt.
  void step(double t, double dt);

  using Observer = std::function<void(const Grid2D&, double t, int step)>;
  RunResult run(const Observer& observer = {});

 private:
  struct SourceStencil {
    PointSource source;
    std::vector<std::pair<int, double>> cells;
  };

  void sweep_line(Axis a, int line, double dt, std::vector<RiemannSolution>& rs,
                  std::vector<StateVector>& cq);
  void source_stage(double t, double h, bool include_ghosts);

  Grid2D grid_;
  MaterialTable table_;
  SimConfig config_;
  AnalyticField analytic_;
  std::vector<SourceStencil> stencils_;
  bool dissipative_ = false;

  std::vector<StateVector> dx_acc_, dz_acc_;
  std::vector<StateVector> g_up_, g_down_, f_right_, f_left_;
};

}  // namespace poro
