#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "poro/analytic.hpp"
#include "poro/material.hpp"

namespace poro {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seed for every randomized check, so reports are reproducible.
inline constexpr std::uint64_t kCheckSeed = 20130917;

double energy_norm(const StateVector& q, const Mat8& E);
double energy_norm(const CState& q, const Mat8& E);

struct GridNorms {
  double n1 = 0.0;
  double n2 = 0.0;
  double nmax = 0.0;
};

GridNorms grid_norms(const std::vector<double>& field);

struct ConvergenceFit {
  double rate = 0.0;
  double r2 = 0.0;
  double intercept = 0.0;
};

/// Least-squares slope of log(error) against log(m); rate is its magnitude.
ConvergenceFit fit_convergence(const std::vector<int>& m, const std::vector<double>& errors);

struct ErrorReport {
  std::vector<int> m;
  std::vector<GridNorms> norms;
  ConvergenceFit fit1, fit2, fitmax;
};

/// Fills the three fits from m and norms.
void finalize_report(ErrorReport& report);

struct CheckReport {
  std::string name;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  std::map<std::string, std::string> values;
  bool skipped = false;

  bool ok() const { return violations.empty(); }
  std::string to_text() const;
  std::string to_kv() const;
};

/// Relative asymmetry ||X - X^T||_max / ||X||_max.
double asymmetry(const Mat8& X);

CheckReport check_hyperbolicity(const SystemMatrices& m, int n_directions = 72);

CheckReport check_entropy_conditions(const SystemMatrices& m, int n_samples = 1000,
                                     std::uint64_t seed = kCheckSeed);

/// Random state whose components have comparable energy contributions.
StateVector random_state(const Mat8& E, std::mt19937_64& rng);

using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Equilibrium system: U = Pi Q holds (tau_xx, tau_zz, tau_xz, v_x + rho_f q_x / rho,
/// v_z + rho_f q_z / rho, p); G injects U with q = 0.
struct ReducedSystem {
  Eigen::Matrix<double, 6, kNumState> Pi;
  Eigen::Matrix<double, kNumState, 6> G;
  Mat6 A_r;
  Mat6 B_r;
};

ReducedSystem reduce_system(const Material& m);

struct ReducedSpeeds {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

ReducedSpeeds reduced_speeds(const ReducedSystem& r, double nx, double nz);

struct SubcharacteristicRow {
  double angle = 0.0;
  WaveSpeeds full;
  ReducedSpeeds reduced;
  double margin_pf = 0.0;
  double margin_ps = 0.0;
  double margin_s = 0.0;
  bool equality = false;
};

/// Relative margin below which an inequality counts as attained.
inline constexpr double kEqualityTol = 1e-6;

struct SubcharacteristicReport {
  CheckReport report;
  std::vector<SubcharacteristicRow> rows;
  bool equality_detected = false;
  bool strict = false;
};

/// Angles in radians, measured in global axes.
SubcharacteristicReport check_subcharacteristic(const Material& m,
                                                const std::vector<double>& angles);

}  // namespace poro
