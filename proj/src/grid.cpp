#include "poro/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace poro {

Grid2D::Grid2D(int nx, int nz, double x0, double z0, double dx, double dz)
    : nx_(nx), nz_(nz), x0_(x0), z0_(z0), dx_(dx), dz_(dz) {
  if (nx <= 0 || nz <= 0) throw std::invalid_argument("grid must have at least one cell");
  if (!(dx > 0) || !(dz > 0)) throw std::invalid_argument("cell sizes must be positive");
  state_.assign(padded_size(), StateVector::Zero());
  material_.assign(padded_size(), 0);
}

void Grid2D::sync_ghost_materials() {
  for (int j = -ghost; j < nz_ + ghost; ++j) {
    for (int i = -ghost; i < nx_ + ghost; ++i) {
      if (in_interior(i, j)) continue;
      const int ic = std::clamp(i, 0, nx_ - 1);
      const int jc = std::clamp(j, 0, nz_ - 1);
      material_[index(i, j)] = material_[index(ic, jc)];
    }
  }
}

void Grid2D::fill(const StateVector& value) {
  std::fill(state_.begin(), state_.end(), value);
}

std::pair<int, int> Grid2D::locate(double x, double z) const {
  const double fx = (x - x0_) / dx_;
  const double fz = (z - z0_) / dz_;
  if (!(fx >= 0 && fx <= nx_ && fz >= 0 && fz <= nz_)) {
    std::ostringstream os;
    os << "point (" << x << ", " << z << ") lies outside the grid";
    throw std::out_of_range(os.str());
  }
  const int i = std::min(static_cast<int>(std::floor(fx)), nx_ - 1);
  const int j = std::min(static_cast<int>(std::floor(fz)), nz_ - 1);
  return {i, j};
}

}  // namespace poro
