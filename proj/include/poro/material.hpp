#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "poro/state.hpp"

namespace poro {

/// Raw parameters of an orthotropic (transversely isotropic about the 3-axis)
/// poroelastic medium. SI units; theta_mat is the angle of the material
/// 1-axis from the global x-axis, counterclockwise, in radians.
struct MaterialSpec {
  double K_s = 0.0;
  double rho_s = 0.0;
  double c11 = 0.0;
  double c12 = 0.0;
  double c13 = 0.0;
  double c33 = 0.0;
  double c55 = 0.0;
  double phi = 0.0;
  double kappa1 = 0.0;
  double kappa3 = 0.0;
  double T1 = 1.0;
  double T3 = 1.0;
  double K_f = 0.0;
  double rho_f = 0.0;
  double eta = 0.0;
  double theta_mat = 0.0;

  /// Throws MaterialError naming the first violated invariant.
  void validate() const;

  /// True when the in-plane (x-z) elastic response has no preferred direction.
  bool is_isotropic(double rel_tol = 1e-12) const;
};

class MaterialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DerivedCoefficients {
  double alpha1 = 0.0;
  double alpha3 = 0.0;
  double M = 0.0;
  double cu11 = 0.0;
  double cu12 = 0.0;
  double cu13 = 0.0;
  double cu33 = 0.0;
  double cu55 = 0.0;
  double rho = 0.0;
  double m1 = 0.0;
  double m3 = 0.0;
  double Delta1 = 0.0;
  double Delta3 = 0.0;
  // Empty when eta == 0 (no dissipation).
  std::optional<double> tau_d1;
  std::optional<double> tau_d3;

  bool dissipative() const { return tau_d1.has_value(); }
};

/// Flux Jacobians A (x) and B (z), relaxation matrix D and energy Hessian E,
/// all expressed in global x-z coordinates for orientation theta_mat.
struct SystemMatrices {
  Mat8 A = Mat8::Zero();
  Mat8 B = Mat8::Zero();
  Mat8 D = Mat8::Zero();
  Mat8 E = Mat8::Zero();
  double theta_mat = 0.0;
};

DerivedCoefficients derive_coefficients(const MaterialSpec& spec);

/// Matrices in the material principal frame (theta_mat ignored).
SystemMatrices build_principal_matrices(const DerivedCoefficients& coeffs,
                                        const MaterialSpec& spec);

/// Matrices in global coordinates; rotated by spec.theta_mat.
SystemMatrices build_system_matrices(const DerivedCoefficients& coeffs,
                                     const MaterialSpec& spec);

/// 8x8 map taking a global-frame state to the frame rotated by theta
/// (stresses as a rank-2 tensor, v and q as vectors, p as a scalar).
Mat8 state_rotation(double theta);

/// Re-expresses matrices for a medium whose axes are turned by an extra theta:
/// A' = R^-1 (A cos - B sin) R, B' = R^-1 (A sin + B cos) R, D' = R^-1 D R,
/// E' = R^T E R with R = state_rotation(theta).
SystemMatrices rotate_to_global(const SystemMatrices& m, double theta);

struct WaveSpeeds {
  double fast_p = 0.0;
  double s = 0.0;
  double slow_p = 0.0;
};

/// Relative threshold under which an eigenvalue counts as zero.
inline constexpr double kZeroSpeedTol = 1e-8;

/// Eigenvalues (ascending) of n_x A + n_z B, via the symmetric generalized
/// problem E(n.A) v = lambda E v.
Eigen::Matrix<double, kNumState, 1> jacobian_spectrum(const SystemMatrices& m,
                                                      double nx, double nz);

/// Positive characteristic speeds along the unit direction (nx, nz).
/// Throws MaterialError if the spectrum is not {+-c_pf, +-c_s, +-c_ps, 0, 0}.
WaveSpeeds wave_speeds(const SystemMatrices& m, double nx, double nz);

/// A named material with its derived data precomputed once.
struct Material {
  std::string name;
  MaterialSpec spec;
  DerivedCoefficients coeffs;
  SystemMatrices matrices;
};

Material make_material(std::string name, const MaterialSpec& spec);

}  // namespace poro
