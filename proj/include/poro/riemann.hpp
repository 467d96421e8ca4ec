#pragma once

#include <array>
#include <stdexcept>

#include "poro/material.hpp"
#include "poro/state.hpp"

namespace poro {

class RiemannError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenstructure of the flux Jacobian along one grid axis for one material.
struct WaveBasis {
  Axis direction = Axis::x;
  /// Eigenvalues, ascending: three negative, two zero, three positive.
  std::array<double, kNumState> speeds{};
  /// Right eigenvectors as columns, each with unit energy norm.
  Mat8 eigvecs = Mat8::Zero();
  /// Left eigenvectors as rows (eigvecs^-1 = eigvecs^T E).
  Mat8 left = Mat8::Zero();
  /// Energy Hessian of the owning material (global frame).
  Mat8 energy = Mat8::Zero();

  static constexpr std::array<int, 3> neg_idx{0, 1, 2};
  static constexpr std::array<int, 2> zero_idx{3, 4};
  static constexpr std::array<int, 3> pos_idx{5, 6, 7};

  double max_speed() const { return speeds[7]; }
};

WaveBasis build_wave_basis(const SystemMatrices& m, Axis direction);

enum class Side { left, right };

inline constexpr int kNumWaves = 6;

struct TravelingWave {
  StateVector r = StateVector::Zero();
  double speed = 0.0;
  Side side = Side::left;
};

/// Wave-strength operator for one ordered material pair and axis.
/// Waves 0..2 are left-going in the left material (fast, S, slow P),
/// waves 3..5 right-going in the right material (slow P, S, fast).
struct InterfaceOperator {
  int left_material = 0;
  int right_material = 0;
  Axis direction = Axis::x;
  Mat8 Rtilde = Mat8::Zero();
  Mat8 Rtilde_inv = Mat8::Zero();
  std::array<TravelingWave, kNumWaves> wave_cols{};
  /// Rows of Rtilde_inv that yield the traveling-wave strengths.
  Eigen::Matrix<double, kNumWaves, kNumState> strength_rows;
  /// Orthonormal basis of the stationary null space shared by both sides.
  Eigen::Matrix<double, kNumState, 2> null_space;
};

InterfaceOperator build_interface_operator(const WaveBasis& left,
                                           const WaveBasis& right,
                                           int left_id = 0, int right_id = 0);

struct RiemannSolution {
  StateVector amdq = StateVector::Zero();
  StateVector apdq = StateVector::Zero();
  std::array<StateVector, kNumWaves> waves{};
  std::array<double, kNumWaves> speeds{};
};

RiemannSolution solve_normal(const StateVector& q_left, const StateVector& q_right,
                             const InterfaceOperator& op);

/// In-place variant used by the sweeps.
void solve_normal(const StateVector& q_left, const StateVector& q_right,
                  const InterfaceOperator& op, RiemannSolution& out);

struct TransverseSplit {
  StateVector bmasdq = StateVector::Zero();
  StateVector bpasdq = StateVector::Zero();
};

/// Splits a normal fluctuation into parts propagating down/up the transverse
/// axis, using the transverse basis of the cell the fluctuation enters.
TransverseSplit solve_transverse(const StateVector& fluctuation,
                                 const WaveBasis& cell_basis);

}  // namespace poro
