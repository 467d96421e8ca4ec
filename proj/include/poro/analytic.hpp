#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

#include "poro/material.hpp"
#include "poro/state.hpp"

namespace poro {

using cdouble = std::complex<double>;
using CVec4 = Eigen::Matrix<cdouble, 4, 1>;
using CMat4 = Eigen::Matrix<cdouble, 4, 4>;
using CState = Eigen::Matrix<cdouble, kNumState, 1>;

enum class WaveFamily { fast_p, s, slow_p };

std::optional<WaveFamily> parse_family(std::string_view s);
const char* to_string(WaveFamily f);

class AnalyticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F, L and Gamma of the plane-wave dispersion relation, for direction cosines
/// (l1, l3) expressed in the material principal frame.
struct PlaneWaveMatrices {
  CMat4 F;
  CMat4 L;
  CMat4 Gamma;
};

PlaneWaveMatrices plane_wave_matrices(const Material& m, double omega, double l1, double l3);

/// One time-harmonic plane wave. V0 = (v1, v3, q1, q3) and T0 = (tau11, tau33,
/// tau13, -p) are in the material frame; Q0 is the combined amplitude in global
/// axes with unit energy norm.
struct PlaneWaveMode {
  WaveFamily family = WaveFamily::fast_p;
  double omega = 0.0;
  double l_x = 1.0;
  double l_z = 0.0;
  double l1 = 1.0;
  double l3 = 0.0;
  cdouble k;
  cdouble eigenvalue;
  double phase_speed = 0.0;
  CVec4 V0;
  CVec4 T0;
  CState Q0;
  /// Reference point where the phase is zero at t = 0.
  double x_ref = 0.0;
  double z_ref = 0.0;
};

PlaneWaveMode solve_plane_wave(const Material& m, double omega, double l_x, double l_z,
                               WaveFamily family);

/// Q(x, z, t) = Re[Q0 exp(i(k (l_x (x - x_ref) + l_z (z - z_ref)) - omega t))].
StateVector evaluate_plane_wave(const PlaneWaveMode& mode, double x, double z, double t);

/// Global-frame state amplitude before the real part is taken.
CState plane_wave_amplitude(const PlaneWaveMode& mode, double x, double z, double t);

}  // namespace poro
