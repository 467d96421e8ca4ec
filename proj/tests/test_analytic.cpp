#include <doctest.h>

#include <cmath>
#include <numbers>

#include "poro/analytic.hpp"
#include "poro/presets.hpp"
#include "poro/verify.hpp"

using namespace poro;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Material preset(const char* name, double theta = 0.0, std::optional<double> eta = {}) {
  MaterialSpec s = *material_preset(name);
  s.theta_mat = theta;
  if (eta) s.eta = *eta;
  return make_material(name, s);
}

double family_speed(const WaveSpeeds& w, WaveFamily f) {
  return f == WaveFamily::fast_p ? w.fast_p : f == WaveFamily::s ? w.s : w.slow_p;
}

const WaveFamily kFamilies[] = {WaveFamily::fast_p, WaveFamily::s, WaveFamily::slow_p};

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("slow_p") == WaveFamily::slow_p);
  CHECK_FALSE(parse_family("fast").has_value());
  CHECK(std::string(to_string(WaveFamily::s)) == "s");
}

TEST_CASE("inviscid fast P along the 1-axis") {
  const Material m = preset("sandstone_ortho", 0.0, 0.0);
  const PlaneWaveMode p = solve_plane_wave(m, 1e4, 1, 0, WaveFamily::fast_p);
  CHECK(p.phase_speed == doctest::Approx(6000).epsilon(0.01));
  CHECK(std::abs(p.k.imag()) <= 1e-14 * std::abs(p.k));
  // Real up to one global phase.
  const CState q = p.Q0 / (p.Q0.cwiseAbs().maxCoeff());
  cdouble ref = 0;
  for (int k = 0; k < 8; ++k) {
    if (std::abs(q(k)) > std::abs(ref)) ref = q(k);
  }
  const CState r = q / ref;
  CHECK(r.imag().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(energy_norm(p.Q0, m.matrices.E) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inviscid phase speeds equal the characteristic speeds") {
  for (const char* name : {"sandstone_ortho", "glass_epoxy", "sandstone_iso", "shale_iso"}) {
    const Material m = preset(name, 0.26, 0.0);
    for (int deg = 0; deg < 360; deg += 15) {
      const double lx = std::cos(deg * kDeg), lz = std::sin(deg * kDeg);
      const WaveSpeeds w = wave_speeds(m.matrices, lx, lz);
      for (WaveFamily f : kFamilies) {
        const PlaneWaveMode p = solve_plane_wave(m, 1e4, lx, lz, f);
        CHECK(p.phase_speed == doctest::Approx(family_speed(w, f)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("eigen and constitutive residuals") {
  for (const auto& name : material_preset_names()) {
    const Material m = preset(name.c_str(), 0.2);
    for (double omega : {kTwoPi * 10.0, kTwoPi * 1e4}) {
      for (int d = 0; d < 24; ++d) {
        const double a = d * 15.0 * kDeg;
        for (WaveFamily f : kFamilies) {
          const PlaneWaveMode p = solve_plane_wave(m, omega, std::cos(a), std::sin(a), f);
          const PlaneWaveMatrices pm = plane_wave_matrices(m, omega, p.l1, p.l3);
          const CMat4 K = pm.Gamma.inverse() * pm.L * pm.F;
          const cdouble lam = (omega / p.k) * (omega / p.k);
          CHECK((K * p.V0 - lam * p.V0).norm() <= 1e-10 * (K.norm() * p.V0.norm()));
          const CVec4 lhs = -omega * p.T0;
          const CVec4 rhs = p.k * (pm.F * p.V0);
          CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
          CHECK(p.k.imag() >= 0.0);
          CHECK(p.k.real() > 0.0);
        }
      }
    }
  }
}

TEST_CASE("viscous slow P decays within a fraction of its wavelength") {
  const Material m = preset("sandstone_ortho");
  const double omega = kTwoPi * 1e4;
  const PlaneWaveMode p = solve_plane_wave(m, omega, 1, 0, WaveFamily::slow_p);
  const double decay = 1.0 / p.k.imag();
  const double wavelength = kTwoPi / p.k.real();
  // Independent 1D two-field dispersion relation along the 1-axis.
  CHECK(decay / wavelength == doctest::Approx(0.23181851740244547).epsilon(1e-8));
  CHECK(decay <= wavelength / 4.0);
  const PlaneWaveMode pz = solve_plane_wave(m, omega, 0, 1, WaveFamily::slow_p);
  CHECK(1.0 / pz.k.imag() <= (kTwoPi / pz.k.real()) / 5.0);

  // Independent check: the dispersion matrix is singular at the chosen root.
  const PlaneWaveMatrices pm = plane_wave_matrices(m, omega, 1, 0);
  const cdouble c2 = (omega / p.k) * (omega / p.k);
  const CMat4 disp = pm.L * pm.F - c2 * pm.Gamma;
  Eigen::JacobiSVD<CMat4> svd(disp);
  CHECK(svd.singularValues()(3) <= 1e-10 * svd.singularValues()(0));
  CHECK(pm.Gamma(3, 3).real() == doctest::Approx(m.coeffs.m3).epsilon(1e-14));
}

TEST_CASE("viscous speeds approach the inviscid limit at high frequency") {
  const Material m = preset("sandstone_ortho", 0.3);
  for (int deg : {0, 30, 90}) {
    const double lx = std::cos(deg * kDeg), lz = std::sin(deg * kDeg);
    const WaveSpeeds w = wave_speeds(m.matrices, lx, lz);
    for (WaveFamily f : {WaveFamily::fast_p, WaveFamily::s}) {
      const PlaneWaveMode p = solve_plane_wave(m, 1e6, lx, lz, f);
      CHECK(p.phase_speed == doctest::Approx(family_speed(w, f)).epsilon(0.005));
    }
    // The slow wave needs eta / (kappa omega) << m before it reaches the limit.
    double prev = 1.0;
    for (double omega : {1e5, 1e6, 1e7, 1e8}) {
      const double dev = std::abs(solve_plane_wave(m, omega, lx, lz, WaveFamily::slow_p).phase_speed / w.slow_p - 1);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 0.005);
  }
}

TEST_CASE("evaluation at the reference point and periodicity") {
  const Material m = preset("glass_epoxy", 0.4, 0.0);
  PlaneWaveMode p = solve_plane_wave(m, 1e4, std::cos(0.7), std::sin(0.7), WaveFamily::s);
  const StateVector q0 = evaluate_plane_wave(p, 0, 0, 0);
  CHECK((q0 - p.Q0.real()).norm() == 0.0);
  p.x_ref = 1.5;
  p.z_ref = -0.5;
  CHECK((evaluate_plane_wave(p, 1.5, -0.5, 0) - p.Q0.real()).norm() == 0.0);

  const double T = kTwoPi / p.omega;
  const double c = p.phase_speed;
  for (auto [x, z, t] : {std::tuple{0.3, -0.2, 0.0}, {1.1, 2.0, 3e-4}, {-4.0, 0.5, 1e-3}}) {
    const StateVector a = evaluate_plane_wave(p, x, z, t);
    const StateVector b = evaluate_plane_wave(p, x + c * T * p.l_x, z + c * T * p.l_z, t + T);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * p.Q0.cwiseAbs().maxCoeff() * 10);
  }
  CHECK_THROWS_AS(solve_plane_wave(m, 1e4, 1.0, 0.1, WaveFamily::s), AnalyticError);
  CHECK_THROWS_AS(solve_plane_wave(m, -1.0, 1.0, 0.0, WaveFamily::s), AnalyticError);
}

TEST_CASE("rotated plane wave field agrees with a hand rotation") {
  // theta_mat = 15 deg, theta_wave = -30 deg, fast P, 1e4 rad/s.
  const double th = 15 * kDeg;
  const Material m = preset("sandstone_ortho", th);
  const double tw = -30 * kDeg;
  const PlaneWaveMode p = solve_plane_wave(m, 1e4, std::cos(tw), std::sin(tw), WaveFamily::fast_p);
  const int n = 40;
  const double L = 8.0, h = L / n;
  double e_lib = 0.0, e_hand = 0.0;
  const double c = std::cos(th), s = std::sin(th);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = -L / 2 + (i + 0.5) * h, z = -L / 2 + (j + 0.5) * h;
      const StateVector q = evaluate_plane_wave(p, x, z, 0.0);
      e_lib += energy_norm(q, m.matrices.E) * h * h;

      const double sx = p.l_x * x + p.l_z * z;
      const cdouble ph = std::exp(cdouble(0, 1) * p.k * sx);
      const CVec4 T = p.T0 * ph, V = p.V0 * ph;
      // Material-frame tensor (t11, t33, t13) back to global axes.
      const double t11 = T(0).real(), t33 = T(1).real(), t13 = T(2).real();
      StateVector g;
      g(kTauXX) = c * c * t11 + s * s * t33 - 2 * c * s * t13;
      g(kTauZZ) = s * s * t11 + c * c * t33 + 2 * c * s * t13;
      g(kTauXZ) = c * s * (t11 - t33) + (c * c - s * s) * t13;
      g(kVx) = c * V(0).real() - s * V(1).real();
      g(kVz) = s * V(0).real() + c * V(1).real();
      g(kP) = -T(3).real();
      g(kQx) = c * V(2).real() - s * V(3).real();
      g(kQz) = s * V(2).real() + c * V(3).real();
      CHECK((g - q).cwiseAbs().maxCoeff() <= 1e-12 * p.Q0.cwiseAbs().maxCoeff());
      e_hand += energy_norm(g, m.matrices.E) * h * h;
    }
  }
  CHECK(std::isfinite(e_lib));
  CHECK(e_lib == doctest::Approx(e_hand).epsilon(1e-12));
}
