#include "poro/harness.hpp"

#include <cmath>

namespace poro {

PlaneWaveRun run_plane_wave(const PlaneWaveStudy& study, int n) {
  Material mat = make_material(study.material_name, study.spec);
  PlaneWaveMode mode = solve_plane_wave(mat, study.omega, std::cos(study.theta_wave),
                                        std::sin(study.theta_wave), study.family);
  const double h = study.domain / n;
  Grid2D grid(n, n, -0.5 * study.domain, -0.5 * study.domain, h, h);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) grid.q(i, j) = evaluate_plane_wave(mode, grid.xc(i), grid.zc(j), 0.0);
  }

  SimConfig cfg;
  cfg.cfl_target = study.cfl;
  cfg.limiter = study.limiter;
  cfg.splitting = study.splitting;
  cfg.transverse = study.transverse;
  cfg.t_final = study.t_final;
  cfg.bc.fill(BoundaryKind::analytic_dirichlet);
  cfg.workers = study.workers;

  const Mat8 E = mat.matrices.E;
  Solver solver(std::move(grid), MaterialTable({std::move(mat)}), cfg);
  solver.set_analytic([mode](double x, double z, double t) {
    return evaluate_plane_wave(mode, x, z, t);
  });
  const RunResult res = solver.run();

  const Grid2D& g = solver.grid();
  const double q0 = energy_norm(mode.Q0, E);
  std::vector<double> err;
  err.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const StateVector d = g.q(i, j) - evaluate_plane_wave(mode, g.xc(i), g.zc(j), res.t_end);
      err.push_back(energy_norm(d, E) / q0);
    }
  }
  PlaneWaveRun run;
  run.n = n;
  run.norms = grid_norms(err);
  run.steps = res.steps;
  run.max_cfl = res.max_cfl;
  run.dt = res.dt_history.empty() ? 0.0 : res.dt_history.front();
  return run;
}

ErrorReport run_convergence(const PlaneWaveStudy& study, const std::vector<int>& grids,
                            std::vector<PlaneWaveRun>* runs) {
  if (grids.size() < 3) throw VerifyError("insufficient points for fit: need at least 3 grid sizes");
  ErrorReport rep;
  for (int n : grids) {
    const PlaneWaveRun r = run_plane_wave(study, n);
    rep.m.push_back(n);
    rep.norms.push_back(r.norms);
    if (runs) runs->push_back(r);
  }
  finalize_report(rep);
  return rep;
}

}  // namespace poro
