#pragma once

#include <string>
#include <vector>

#include "poro/analytic.hpp"
#include "poro/solver.hpp"
#include "poro/verify.hpp"

namespace poro {

/// A plane wave on the square [-domain/2, domain/2]^2 with exact initial and
/// boundary data, compared against the exact mode at t_final.
struct PlaneWaveStudy {
  std::string material_name = "sandstone_ortho";
  MaterialSpec spec;
  WaveFamily family = WaveFamily::fast_p;
  double omega = 1e4;
  double theta_wave = 0.0;
  double domain = 8.0;
  double t_final = 0.0;
  Limiter limiter = Limiter::none;
  Splitting splitting = Splitting::strang;
  double cfl = 0.9;
  bool transverse = true;
  int workers = 1;
};

struct PlaneWaveRun {
  int n = 0;
  GridNorms norms;
  int steps = 0;
  double max_cfl = 0.0;
  double dt = 0.0;
};

PlaneWaveRun run_plane_wave(const PlaneWaveStudy& study, int n);

ErrorReport run_convergence(const PlaneWaveStudy& study, const std::vector<int>& grids,
                            std::vector<PlaneWaveRun>* runs = nullptr);

}  // namespace poro
