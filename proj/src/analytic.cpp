#include "poro/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace poro {

namespace {

constexpr double kMinPhaseSpeed = 1.0;
constexpr double kSeparation = 1e-3;

}  // namespace

std::optional<WaveFamily> parse_family(std::string_view s) {
  if (s == "fast_p") return WaveFamily::fast_p;
  if (s == "s") return WaveFamily::s;
  if (s == "slow_p") return WaveFamily::slow_p;
  return std::nullopt;
}

const char* to_string(WaveFamily f) {
  switch (f) {
    case WaveFamily::fast_p: return "fast_p";
    case WaveFamily::s: return "s";
    case WaveFamily::slow_p: return "slow_p";
  }
  return "?";
}

PlaneWaveMatrices plane_wave_matrices(const Material& m, double omega, double l1, double l3) {
  const DerivedCoefficients& c = m.coeffs;
  const MaterialSpec& s = m.spec;
  PlaneWaveMatrices out;
  CMat4& F = out.F;
  F << l1 * c.cu11, l3 * c.cu13, c.alpha1 * c.M * l1, c.alpha1 * c.M * l3,
       l1 * c.cu13, l3 * c.cu33, c.alpha3 * c.M * l1, c.alpha3 * c.M * l3,
       l3 * c.cu55, l1 * c.cu55, 0.0, 0.0,
       c.alpha1 * c.M * l1, c.alpha3 * c.M * l3, c.M * l1, c.M * l3;
  CMat4& L = out.L;
  L << l1, 0.0, l3, 0.0,
       0.0, l3, l1, 0.0,
       0.0, 0.0, 0.0, l1,
       0.0, 0.0, 0.0, l3;
  // i Y_j(-omega) / omega = m_j + i eta / (kappa_j omega)
  const cdouble g1(c.m1, s.eta / (s.kappa1 * omega));
  const cdouble g3(c.m3, s.eta / (s.kappa3 * omega));
  CMat4& G = out.Gamma;
  G << c.rho, 0.0, s.rho_f, 0.0,
       0.0, c.rho, 0.0, s.rho_f,
       s.rho_f, 0.0, g1, 0.0,
       0.0, s.rho_f, 0.0, g3;
  return out;
}

PlaneWaveMode solve_plane_wave(const Material& m, double omega, double l_x, double l_z,
                               WaveFamily family) {
  if (!(omega > 0)) throw AnalyticError("plane wave requires omega > 0");
  const double norm = std::hypot(l_x, l_z);
  if (std::abs(norm - 1.0) > 1e-12) throw AnalyticError("direction cosines are not normalized");

  const double th = m.spec.theta_mat;
  const double ct = std::cos(th), st = std::sin(th);
  PlaneWaveMode mode;
  mode.family = family;
  mode.omega = omega;
  mode.l_x = l_x;
  mode.l_z = l_z;
  mode.l1 = ct * l_x + st * l_z;
  mode.l3 = -st * l_x + ct * l_z;

  const PlaneWaveMatrices pm = plane_wave_matrices(m, omega, mode.l1, mode.l3);
  const CMat4 K = pm.Gamma.inverse() * pm.L * pm.F;
  Eigen::ComplexEigenSolver<CMat4> solver(K);
  if (solver.info() != Eigen::Success) throw AnalyticError("plane-wave eigen-solve failed");

  struct Candidate {
    int index;
    cdouble k;
    double speed;
  };
  std::vector<Candidate> modes;
  for (int i = 0; i < 4; ++i) {
    const cdouble lambda = solver.eigenvalues()(i);
    const cdouble c = std::sqrt(lambda);
    if (std::abs(c) == 0.0) continue;
    const cdouble k = omega / c;
    if (!(k.real() > 0)) continue;
    const double speed = omega / k.real();
    if (speed < kMinPhaseSpeed) continue;
    modes.push_back({i, k, speed});
  }
  std::sort(modes.begin(), modes.end(),
            [](const Candidate& a, const Candidate& b) { return a.speed > b.speed; });
  if (modes.size() < 3) {
    std::ostringstream os;
    os << "found " << modes.size() << " propagating plane-wave modes, expected 3";
    throw AnalyticError(os.str());
  }
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    if (modes[i].speed - modes[i + 1].speed <= kSeparation * modes[i].speed) {
      throw AnalyticError("plane-wave families are not separated by more than 0.1%");
    }
  }
  const Candidate& pick = modes[static_cast<int>(family)];
  mode.eigenvalue = solver.eigenvalues()(pick.index);
  mode.k = pick.k;
  mode.phase_speed = pick.speed;
  if (mode.k.imag() < -1e-12 * std::abs(mode.k)) {
    throw AnalyticError("selected plane-wave root grows along its direction of travel");
  }

  CVec4 V = solver.eigenvectors().col(pick.index);
  Eigen::Index imax = 0;
  V.cwiseAbs().maxCoeff(&imax);
  V *= std::conj(V(imax)) / std::abs(V(imax));
  CVec4 T = -(mode.k / omega) * (pm.F * V);

  CState qm;
  qm << T(0), T(1), T(2), V(0), V(1), -T(3), V(2), V(3);
  const Mat8 back = state_rotation(-th);
  CState q = back.cast<cdouble>() * qm;
  const double e2 = (q.adjoint() * m.matrices.E.cast<cdouble>() * q)(0).real();
  if (!(e2 > 0)) throw AnalyticError("plane-wave amplitude has zero energy");
  const double scale = 1.0 / std::sqrt(e2);
  mode.V0 = V * scale;
  mode.T0 = T * scale;
  mode.Q0 = q * scale;
  return mode;
}

CState plane_wave_amplitude(const PlaneWaveMode& mode, double x, double z, double t) {
  const double s = mode.l_x * (x - mode.x_ref) + mode.l_z * (z - mode.z_ref);
  const cdouble phase = std::exp(cdouble(0.0, 1.0) * (mode.k * s - mode.omega * t));
  return mode.Q0 * phase;
}

StateVector evaluate_plane_wave(const PlaneWaveMode& mode, double x, double z, double t) {
  return plane_wave_amplitude(mode, x, z, t).real();
}

}  // namespace poro
