#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "poro/state.hpp"

namespace poro {

/// Cell-centred Cartesian field with a ghost frame. Cell (i, j) covers
/// [x0 + i*dx, x0 + (i+1)*dx] x [z0 + j*dz, z0 + (j+1)*dz]; interior indices are
/// 0 <= i < nx, 0 <= j < nz and ghosts extend `ghost` cells beyond.
class Grid2D {
 public:
  static constexpr int ghost = 2;

  Grid2D() = default;
  Grid2D(int nx, int nz, double x0, double z0, double dx, double dz);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double x0() const { return x0_; }
  double z0() const { return z0_; }
  double dx() const { return dx_; }
  double dz() const { return dz_; }
  int stride() const { return nx_ + 2 * ghost; }
  int padded_size() const { return stride() * (nz_ + 2 * ghost); }

  double xc(int i) const { return x0_ + (i + 0.5) * dx_; }
  double zc(int j) const { return z0_ + (j + 0.5) * dz_; }

  int index(int i, int j) const { return (j + ghost) * stride() + (i + ghost); }
  bool in_interior(int i, int j) const { return i >= 0 && i < nx_ && j >= 0 && j < nz_; }

  StateVector& q(int i, int j) { return state_[index(i, j)]; }
  const StateVector& q(int i, int j) const { return state_[index(i, j)]; }

  int material(int i, int j) const { return material_[index(i, j)]; }
  /// Sets the material of an interior cell; ghosts follow via sync_ghost_materials().
  void set_material(int i, int j, int id) { material_[index(i, j)] = id; }
  /// Copies interior material ids outward into the ghost frame.
  void sync_ghost_materials();

  void fill(const StateVector& value);

  std::vector<StateVector>& raw_state() { return state_; }
  const std::vector<StateVector>& raw_state() const { return state_; }

  /// Interior cell containing (x, z); throws std::out_of_range outside the domain.
  std::pair<int, int> locate(double x, double z) const;

 private:
  int nx_ = 0;
  int nz_ = 0;
  double x0_ = 0.0;
  double z0_ = 0.0;
  double dx_ = 1.0;
  double dz_ = 1.0;
  std::vector<StateVector> state_;
  std::vector<int> material_;
};

}  // namespace poro
