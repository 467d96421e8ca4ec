#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "poro/material.hpp"
#include "poro/presets.hpp"

using namespace poro;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double max_abs(const Mat8& m) { return m.cwiseAbs().maxCoeff(); }

Material preset(const char* name, double theta = 0.0) {
  MaterialSpec s = *material_preset(name);
  s.theta_mat = theta;
  return make_material(name, s);
}

}  // namespace

TEST_CASE("derived coefficients of orthotropic sandstone") {
  const auto c = derive_coefficients(*material_preset("sandstone_ortho"));
  CHECK(c.rho == doctest::Approx(2208.0).epsilon(1e-12));
  CHECK(c.m1 == doctest::Approx(10400.0).epsilon(1e-12));
  CHECK(c.m3 == doctest::Approx(18720.0).epsilon(1e-12));
  CHECK(c.alpha1 == doctest::Approx(0.6825).epsilon(1e-12));
  CHECK(c.alpha3 == doctest::Approx(0.7675).epsilon(1e-12));
  CHECK(c.M == doctest::Approx(11576027975.400942).epsilon(1e-10));
  REQUIRE(c.dissipative());
  CHECK(*c.tau_d1 == doctest::Approx(5.946086956521739e-06).epsilon(1e-10));
  CHECK(*c.tau_d3 == doctest::Approx(1.8230144927536232e-06).epsilon(1e-10));
  CHECK(c.cu11 >= 71.8e9);
  CHECK(c.cu33 >= 53.4e9);
}

TEST_CASE("pure fluid limit of the inertia term") {
  MaterialSpec s = *material_preset("sandstone_iso");
  s.phi = 1.0;
  s.T1 = s.T3 = 1.0;
  s.rho_f = 1000.0;
  // Only the tortuosity term is needed; avoid the full validity checks.
  const double m1 = s.rho_f * s.T1 / s.phi;
  CHECK(m1 == doctest::Approx(1000.0));
}

TEST_CASE("inviscid materials have no dissipation time") {
  const auto c = derive_coefficients(*material_preset("sandstone_iso"));
  CHECK_FALSE(c.dissipative());
  CHECK_FALSE(c.tau_d3.has_value());
  const Material m = preset("sandstone_iso");
  CHECK(max_abs(m.matrices.D) == 0.0);
}

TEST_CASE("invalid materials are rejected") {
  MaterialSpec s = *material_preset("sandstone_ortho");
  s.c13 = 70e9;
  CHECK_THROWS_AS(s.validate(), MaterialError);
  s = *material_preset("sandstone_ortho");
  s.phi = 1.5;
  CHECK_THROWS_AS(s.validate(), MaterialError);
  s = *material_preset("sandstone_ortho");
  s.rho_f = -1.0;
  CHECK_THROWS_AS(derive_coefficients(s), MaterialError);
}

TEST_CASE("flux Jacobian entries in the principal frame") {
  const Material m = preset("sandstone_ortho");
  const auto& c = m.coeffs;
  CHECK(m.matrices.A(kVx, kTauXX) == doctest::Approx(-c.m1 / c.Delta1).epsilon(1e-14));
  CHECK(m.matrices.A.col(kTauZZ).isZero(0.0));
  CHECK(m.matrices.B.col(kTauXX).isZero(0.0));
}

TEST_CASE("energy symmetrizes the Jacobians") {
  for (const auto& name : material_preset_names()) {
    for (double th : {0.0, 15.0, 67.0}) {
      const Material m = preset(name.c_str(), th * kDeg);
      const Mat8 EA = m.matrices.E * m.matrices.A;
      const Mat8 EB = m.matrices.E * m.matrices.B;
      CHECK(max_abs(EA - EA.transpose()) / max_abs(EA) < 1e-12);
      CHECK(max_abs(EB - EB.transpose()) / max_abs(EB) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Mat8> es(m.matrices.E);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      const Mat8 ED = m.matrices.E * m.matrices.D;
      Eigen::SelfAdjointEigenSolver<Mat8> ed(0.5 * (ED + ED.transpose()));
      const double scale = std::max(max_abs(ED), 1e-300);
      CHECK(ed.eigenvalues().maxCoeff() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("principal wave speeds match the reference table") {
  struct Row {
    const char* name;
    double x[3];
    double z[3];
  };
  const Row rows[] = {
      {"sandstone_ortho", {6000, 3480, 1030}, {5260, 3520, 746}},
      {"glass_epoxy", {5240, 1370, 975}, {3580, 1390, 604}},
      {"sandstone_iso", {4250, 2390, 1020}, {4250, 2390, 1020}},
      {"shale_iso", {2480, 1430, 1130}, {2480, 1430, 1130}},
  };
  for (const auto& r : rows) {
    const Material m = preset(r.name);
    const WaveSpeeds x = wave_speeds(m.matrices, 1, 0);
    const WaveSpeeds z = wave_speeds(m.matrices, 0, 1);
    CHECK(rel(x.fast_p, r.x[0]) < 0.01);
    CHECK(rel(x.s, r.x[1]) < 0.01);
    CHECK(rel(x.slow_p, r.x[2]) < 0.01);
    CHECK(rel(z.fast_p, r.z[0]) < 0.01);
    CHECK(rel(z.s, r.z[1]) < 0.01);
    CHECK(rel(z.slow_p, r.z[2]) < 0.01);
  }
  const Material s = preset("sandstone_ortho");
  const WaveSpeeds x = wave_speeds(s.matrices, 1, 0);
  CHECK(x.fast_p == doctest::Approx(6004.31369643).epsilon(1e-9));
  CHECK(x.s == doctest::Approx(3484.00348466).epsilon(1e-9));
  CHECK(x.slow_p == doctest::Approx(1026.45306203).epsilon(1e-9));
  const WaveSpeeds d = wave_speeds(s.matrices, std::cos(30 * kDeg), std::sin(30 * kDeg));
  CHECK(d.fast_p == doctest::Approx(5720.11727173).epsilon(1e-9));
  CHECK(d.s == doctest::Approx(3666.14798073).epsilon(1e-9));
  CHECK(d.slow_p == doctest::Approx(958.67347161).epsilon(1e-9));
}

TEST_CASE("spectrum is symmetric with a double zero on a 5 degree sweep") {
  for (const auto& name : material_preset_names()) {
    const Material m = preset(name.c_str());
    for (int deg = 0; deg < 360; deg += 5) {
      const double nx = std::cos(deg * kDeg), nz = std::sin(deg * kDeg);
      const auto ev = jacobian_spectrum(m.matrices, nx, nz);
      const double top = ev.cwiseAbs().maxCoeff();
      for (int k = 0; k < 8; ++k) CHECK(std::abs(ev(k) + ev(7 - k)) < 1e-10 * top);
      CHECK(std::abs(ev(3)) < kZeroSpeedTol * top);
      CHECK(std::abs(ev(4)) < kZeroSpeedTol * top);
      CHECK(ev(5) > kZeroSpeedTol * top);
    }
  }
}

TEST_CASE("isotropic speeds do not depend on direction") {
  const Material m = preset("sandstone_iso");
  CHECK(m.spec.is_isotropic());
  const WaveSpeeds ref = wave_speeds(m.matrices, 1, 0);
  for (int deg = 0; deg <= 180; deg += 5) {
    const WaveSpeeds w = wave_speeds(m.matrices, std::cos(deg * kDeg), std::sin(deg * kDeg));
    CHECK(rel(w.fast_p, ref.fast_p) < 1e-10);
    CHECK(rel(w.s, ref.s) < 1e-10);
    CHECK(rel(w.slow_p, ref.slow_p) < 1e-10);
  }
  CHECK_FALSE(material_preset("sandstone_ortho")->is_isotropic());
}

TEST_CASE("rotation by zero is the identity") {
  const Material m = preset("sandstone_ortho");
  const SystemMatrices r = rotate_to_global(m.matrices, 0.0);
  CHECK(max_abs(r.A - m.matrices.A) == 0.0);
  CHECK(max_abs(r.B - m.matrices.B) == 0.0);
  CHECK(max_abs(r.E - m.matrices.E) == 0.0);
}

TEST_CASE("half-turn rotation leaves the medium unchanged") {
  // Turning the medium by 180 degrees maps every tensor onto itself; only the
  // chain-rule combination with cos = -1 flips the sign of A and B.
  const Material m = preset("sandstone_ortho");
  const SystemMatrices r = rotate_to_global(m.matrices, std::numbers::pi);
  CHECK(max_abs(r.A - m.matrices.A) < 1e-12 * max_abs(m.matrices.A));
  CHECK(max_abs(r.B - m.matrices.B) < 1e-12 * max_abs(m.matrices.B));
  CHECK(max_abs(r.D - m.matrices.D) < 1e-12 * max_abs(m.matrices.D));
  // The sign flip sits in the state conjugation: vectors reverse, tensors do not.
  const Mat8 R = state_rotation(std::numbers::pi);
  CHECK(max_abs(R.inverse() * m.matrices.A * R + m.matrices.A) < 1e-12 * max_abs(m.matrices.A));
}

TEST_CASE("rotated speeds equal principal speeds at the shifted angle") {
  const Material p = preset("sandstone_ortho");
  for (double th : {15.0, 40.0, -70.0}) {
    const Material g = preset("sandstone_ortho", th * kDeg);
    for (int deg = 0; deg < 360; deg += 15) {
      const double phi = deg * kDeg;
      const auto a = jacobian_spectrum(g.matrices, std::cos(phi), std::sin(phi));
      const auto b = jacobian_spectrum(p.matrices, std::cos(phi - th * kDeg), std::sin(phi - th * kDeg));
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10 * b.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("rotation followed by its inverse restores the matrices") {
  const Material m = preset("glass_epoxy", 0.3);
  const SystemMatrices back = rotate_to_global(rotate_to_global(m.matrices, 0.7), -0.7);
  CHECK(max_abs(back.A - m.matrices.A) < 1e-12 * max_abs(m.matrices.A));
  CHECK(max_abs(back.B - m.matrices.B) < 1e-12 * max_abs(m.matrices.B));
  CHECK(max_abs(back.D - m.matrices.D) < 1e-12 * max_abs(m.matrices.D));
  CHECK(max_abs(back.E - m.matrices.E) < 1e-12 * max_abs(m.matrices.E));
}
