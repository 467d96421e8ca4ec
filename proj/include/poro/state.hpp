#pragma once

#include <Eigen/Dense>

namespace poro {

inline constexpr int kNumState = 8;

/// Cell state Q = (tau_xx, tau_zz, tau_xz, v_x, v_z, p, q_x, q_z), SI units.
/// This ordering is shared by every matrix in the library.
using StateVector = Eigen::Matrix<double, kNumState, 1>;
using Mat8 = Eigen::Matrix<double, kNumState, kNumState>;

enum Component : int {
  kTauXX = 0,
  kTauZZ = 1,
  kTauXZ = 2,
  kVx = 3,
  kVz = 4,
  kP = 5,
  kQx = 6,
  kQz = 7,
};

enum class Axis { x, z };

inline const char* axis_name(Axis a) { return a == Axis::x ? "x" : "z"; }

}  // namespace poro
