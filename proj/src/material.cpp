#include "poro/material.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace poro {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw MaterialError(what);
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void MaterialSpec::validate() const {
  require(K_s > 0 && rho_s > 0 && K_f > 0 && rho_f > 0,
          "moduli and densities must be positive");
  require(c11 > 0 && c33 > 0, "c11 and c33 must be positive");
  require(c55 > 0, "c55 must be positive");
  require(c11 * c33 - c13 * c13 > 0,
          "drained stiffness is not positive-definite: c11*c33 - c13^2 <= 0");
  require(phi > 0 && phi < 1, "porosity must satisfy 0 < phi < 1");
  require(kappa1 > 0 && kappa3 > 0, "permeabilities must be positive");
  require(T1 >= 1 && T3 >= 1, "tortuosities must be >= 1");
  require(eta >= 0, "viscosity must be non-negative");
  require(std::isfinite(theta_mat), "theta_mat must be finite");
}

bool MaterialSpec::is_isotropic(double rel_tol) const {
  return close_rel(c11, c33, rel_tol) && close_rel(c12, c13, rel_tol) &&
         close_rel(c55, 0.5 * (c11 - c13), rel_tol) &&
         close_rel(kappa1, kappa3, rel_tol) && close_rel(T1, T3, rel_tol);
}

DerivedCoefficients derive_coefficients(const MaterialSpec& spec) {
  spec.validate();
  DerivedCoefficients c;
  c.alpha1 = 1.0 - (spec.c11 + spec.c12 + spec.c13) / (3.0 * spec.K_s);
  c.alpha3 = 1.0 - (2.0 * spec.c13 + spec.c33) / (3.0 * spec.K_s);

  const double m_den =
      spec.K_s * (1.0 + spec.phi * (spec.K_s / spec.K_f - 1.0)) -
      (2.0 * spec.c11 + spec.c33 + 2.0 * spec.c12 + 4.0 * spec.c13) / 9.0;
  if (!(m_den > 0)) {
    throw MaterialError("unphysical material: coupling modulus M has non-positive denominator");
  }
  c.M = spec.K_s * spec.K_s / m_den;

  c.cu11 = spec.c11 + c.M * c.alpha1 * c.alpha1;
  c.cu12 = spec.c12 + c.M * c.alpha1 * c.alpha1;
  c.cu13 = spec.c13 + c.M * c.alpha1 * c.alpha3;
  c.cu33 = spec.c33 + c.M * c.alpha3 * c.alpha3;
  c.cu55 = spec.c55;

  c.rho = (1.0 - spec.phi) * spec.rho_s + spec.phi * spec.rho_f;
  c.m1 = spec.rho_f * spec.T1 / spec.phi;
  c.m3 = spec.rho_f * spec.T3 / spec.phi;
  c.Delta1 = c.rho * c.m1 - spec.rho_f * spec.rho_f;
  c.Delta3 = c.rho * c.m3 - spec.rho_f * spec.rho_f;
  if (!(c.Delta1 > 0) || !(c.Delta3 > 0)) {
    throw MaterialError("unphysical material: singular momentum system (Delta_i <= 0)");
  }

  if (spec.eta > 0) {
    c.tau_d1 = c.Delta1 * spec.kappa1 / (c.rho * spec.eta);
    c.tau_d3 = c.Delta3 * spec.kappa3 / (c.rho * spec.eta);
  }
  return c;
}

SystemMatrices build_principal_matrices(const DerivedCoefficients& c,
                                        const MaterialSpec& spec) {
  const double rf = spec.rho_f;
  SystemMatrices m;

  Mat8& A = m.A;
  A(kTauXX, kVx) = c.cu11;
  A(kTauXX, kQx) = c.alpha1 * c.M;
  A(kTauZZ, kVx) = c.cu13;
  A(kTauZZ, kQx) = c.alpha3 * c.M;
  A(kTauXZ, kVz) = c.cu55;
  A(kVx, kTauXX) = c.m1 / c.Delta1;
  A(kVx, kP) = rf / c.Delta1;
  A(kVz, kTauXZ) = c.m3 / c.Delta3;
  A(kP, kVx) = -c.alpha1 * c.M;
  A(kP, kQx) = -c.M;
  A(kQx, kTauXX) = -rf / c.Delta1;
  A(kQx, kP) = -c.rho / c.Delta1;
  A(kQz, kTauXZ) = -rf / c.Delta3;
  A = -A;

  Mat8& B = m.B;
  B(kTauXX, kVz) = c.cu13;
  B(kTauXX, kQz) = c.alpha1 * c.M;
  B(kTauZZ, kVz) = c.cu33;
  B(kTauZZ, kQz) = c.alpha3 * c.M;
  B(kTauXZ, kVx) = c.cu55;
  B(kVx, kTauXZ) = c.m1 / c.Delta1;
  B(kVz, kTauZZ) = c.m3 / c.Delta3;
  B(kVz, kP) = rf / c.Delta3;
  B(kP, kVz) = -c.alpha3 * c.M;
  B(kP, kQz) = -c.M;
  B(kQx, kTauXZ) = -rf / c.Delta1;
  B(kQz, kTauZZ) = -rf / c.Delta3;
  B(kQz, kP) = -c.rho / c.Delta3;
  B = -B;

  if (spec.eta > 0) {
    const double g1 = spec.eta / (c.Delta1 * spec.kappa1);
    const double g3 = spec.eta / (c.Delta3 * spec.kappa3);
    m.D(kVx, kQx) = rf * g1;
    m.D(kVz, kQz) = rf * g3;
    m.D(kQx, kQx) = -c.rho * g1;
    m.D(kQz, kQz) = -c.rho * g3;
  }

  const double det = spec.c11 * spec.c33 - spec.c13 * spec.c13;
  const double sp1 = (c.alpha1 * spec.c33 - c.alpha3 * spec.c13) / det;
  const double sp3 = (c.alpha3 * spec.c11 - c.alpha1 * spec.c13) / det;
  Mat8& E = m.E;
  E(kTauXX, kTauXX) = spec.c33 / det;
  E(kTauXX, kTauZZ) = E(kTauZZ, kTauXX) = -spec.c13 / det;
  E(kTauZZ, kTauZZ) = spec.c11 / det;
  E(kTauXZ, kTauXZ) = 1.0 / spec.c55;
  E(kTauXX, kP) = E(kP, kTauXX) = sp1;
  E(kTauZZ, kP) = E(kP, kTauZZ) = sp3;
  E(kP, kP) = 1.0 / c.M +
              (c.alpha1 * c.alpha1 * spec.c33 + c.alpha3 * c.alpha3 * spec.c11 -
               2.0 * c.alpha1 * c.alpha3 * spec.c13) / det;
  E(kVx, kVx) = c.rho;
  E(kVz, kVz) = c.rho;
  E(kVx, kQx) = E(kQx, kVx) = rf;
  E(kVz, kQz) = E(kQz, kVz) = rf;
  E(kQx, kQx) = c.m1;
  E(kQz, kQz) = c.m3;

  m.theta_mat = 0.0;
  return m;
}

SystemMatrices build_system_matrices(const DerivedCoefficients& coeffs,
                                     const MaterialSpec& spec) {
  SystemMatrices principal = build_principal_matrices(coeffs, spec);
  if (spec.theta_mat == 0.0) return principal;
  return rotate_to_global(principal, spec.theta_mat);
}

Mat8 state_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat8 R = Mat8::Zero();
  // sigma' = Q^T sigma Q with Q = [[c, -s], [s, c]].
  R(kTauXX, kTauXX) = c * c;
  R(kTauXX, kTauZZ) = s * s;
  R(kTauXX, kTauXZ) = 2.0 * c * s;
  R(kTauZZ, kTauXX) = s * s;
  R(kTauZZ, kTauZZ) = c * c;
  R(kTauZZ, kTauXZ) = -2.0 * c * s;
  R(kTauXZ, kTauXX) = -c * s;
  R(kTauXZ, kTauZZ) = c * s;
  R(kTauXZ, kTauXZ) = c * c - s * s;
  for (int base : {int(kVx), int(kQx)}) {
    const int ix = base;
    const int iz = base + 1;
    R(ix, ix) = c;
    R(ix, iz) = s;
    R(iz, ix) = -s;
    R(iz, iz) = c;
  }
  R(kP, kP) = 1.0;
  return R;
}

SystemMatrices rotate_to_global(const SystemMatrices& m, double theta) {
  if (theta == 0.0) return m;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Mat8 R = state_rotation(theta);
  // The inverse is the rotation by -theta.
  const Mat8 Rinv = state_rotation(-theta);
  SystemMatrices out;
  out.A = Rinv * (c * m.A - s * m.B) * R;
  out.B = Rinv * (s * m.A + c * m.B) * R;
  out.D = Rinv * m.D * R;
  out.E = R.transpose() * m.E * R;
  out.E = 0.5 * (out.E + out.E.transpose()).eval();
  out.theta_mat = m.theta_mat + theta;
  return out;
}

Eigen::Matrix<double, kNumState, 1> jacobian_spectrum(const SystemMatrices& m,
                                                      double nx, double nz) {
  const Mat8 EJ = m.E * (nx * m.A + nz * m.B);
  const Mat8 sym = 0.5 * (EJ + EJ.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat8> solver(sym, m.E,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw MaterialError("eigen-solver failed on flux Jacobian (malformed material)");
  }
  return solver.eigenvalues();
}

WaveSpeeds wave_speeds(const SystemMatrices& m, double nx, double nz) {
  const auto ev = jacobian_spectrum(m, nx, nz);
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(7)));
  const double zero_tol = kZeroSpeedTol * scale;
  auto fail = [&](const char* why) {
    std::ostringstream os;
    os << "flux Jacobian spectrum is not hyperbolic-poroelastic: " << why
       << " (eigenvalues:";
    for (int i = 0; i < kNumState; ++i) os << ' ' << ev(i);
    os << ')';
    throw MaterialError(os.str());
  };
  if (!(scale > 0)) fail("all eigenvalues vanish");
  for (int i = 0; i < 3; ++i) {
    if (!(ev(i) < -zero_tol)) fail("expected three negative eigenvalues");
    if (!(ev(7 - i) > zero_tol)) fail("expected three positive eigenvalues");
    if (std::abs(ev(i) + ev(7 - i)) > 1e-8 * scale) fail("spectrum not symmetric");
  }
  if (std::abs(ev(3)) > zero_tol || std::abs(ev(4)) > zero_tol) {
    fail("expected two zero eigenvalues");
  }
  return WaveSpeeds{ev(7), ev(6), ev(5)};
}

Material make_material(std::string name, const MaterialSpec& spec) {
  Material mat;
  mat.name = std::move(name);
  mat.spec = spec;
  mat.coeffs = derive_coefficients(spec);
  mat.matrices = build_system_matrices(mat.coeffs, spec);
  return mat;
}

}  // namespace poro
