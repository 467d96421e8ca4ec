#include "poro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace poro {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Mat8 energy_scaling(const Mat8& E) {
  Mat8 S = Mat8::Zero();
  for (int k = 0; k < kNumState; ++k) S(k, k) = std::sqrt(E(k, k));
  return S;
}

}  // namespace

double energy_norm(const StateVector& q, const Mat8& E) {
  const double r = q.dot(E * q);
  const double scale = q.cwiseAbs().dot(E.cwiseAbs() * q.cwiseAbs());
  if (r < -1e-12 * scale) throw VerifyError("energy Hessian is not positive-definite");
  return std::sqrt(std::max(r, 0.0));
}

double energy_norm(const CState& q, const Mat8& E) {
  const double r = (q.adjoint() * E.cast<cdouble>() * q)(0).real();
  const StateVector a = q.cwiseAbs();
  const double scale = a.dot(E.cwiseAbs() * a);
  if (r < -1e-12 * scale) throw VerifyError("energy Hessian is not positive-definite");
  return std::sqrt(std::max(r, 0.0));
}

GridNorms grid_norms(const std::vector<double>& field) {
  if (field.empty()) throw VerifyError("grid_norms of an empty field");
  GridNorms g;
  double sq = 0.0;
  for (double e : field) {
    const double a = std::abs(e);
    g.n1 += a;
    sq += a * a;
    g.nmax = std::max(g.nmax, a);
  }
  const double n = static_cast<double>(field.size());
  g.n1 /= n;
  g.n2 = std::sqrt(sq) / std::sqrt(n);
  return g;
}

ConvergenceFit fit_convergence(const std::vector<int>& m, const std::vector<double>& errors) {
  if (m.size() != errors.size()) throw VerifyError("grid sizes and errors differ in length");
  if (m.size() < 3) throw VerifyError("insufficient points for fit: need at least 3 grid sizes");
  const std::size_t n = m.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] <= 0) throw VerifyError("grid sizes must be positive");
    if (!(errors[i] > 0)) throw VerifyError("errors must be positive to fit a rate");
    x[i] = std::log(static_cast<double>(m[i]));
    y[i] = std::log(errors[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0)) throw VerifyError("grid sizes must not all be equal");
  ConvergenceFit f;
  const double slope = sxy / sxx;
  f.rate = std::abs(slope);
  f.intercept = my - slope * mx;
  f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

void finalize_report(ErrorReport& report) {
  std::vector<double> e1, e2, em;
  for (const auto& g : report.norms) {
    e1.push_back(g.n1);
    e2.push_back(g.n2);
    em.push_back(g.nmax);
  }
  report.fit1 = fit_convergence(report.m, e1);
  report.fit2 = fit_convergence(report.m, e2);
  report.fitmax = fit_convergence(report.m, em);
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << name << ": " << (skipped ? "SKIPPED" : ok() ? "PASS" : "FAIL") << '\n';
  for (const auto& v : violations) os << "  violation: " << v << '\n';
  for (const auto& n : notes) os << "  note: " << n << '\n';
  for (const auto& [k, v] : values) os << "  " << k << " = " << v << '\n';
  return os.str();
}

std::string CheckReport::to_kv() const {
  std::ostringstream os;
  os << "check=" << name << '\n';
  os << "status=" << (skipped ? "skipped" : ok() ? "pass" : "fail") << '\n';
  os << "violations=" << violations.size() << '\n';
  for (std::size_t i = 0; i < violations.size(); ++i) {
    os << "violation." << i << '=' << violations[i] << '\n';
  }
  for (std::size_t i = 0; i < notes.size(); ++i) os << "note." << i << '=' << notes[i] << '\n';
  for (const auto& [k, v] : values) os << k << '=' << v << '\n';
  return os.str();
}

double asymmetry(const Mat8& X) {
  const double scale = X.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (X - X.transpose()).cwiseAbs().maxCoeff() / scale;
}

CheckReport check_hyperbolicity(const SystemMatrices& m, int n_directions) {
  CheckReport rep;
  rep.name = "hyperbolicity";
  const double tol = 1e-12;

  const double aE = asymmetry(m.E);
  const double aEA = asymmetry(m.E * m.A);
  const double aEB = asymmetry(m.E * m.B);
  rep.values["asym_E"] = fmt(aE);
  rep.values["asym_EA"] = fmt(aEA);
  rep.values["asym_EB"] = fmt(aEB);
  if (aE > tol) rep.violations.push_back("E is not symmetric (" + fmt(aE) + ")");
  if (aEA > tol) rep.violations.push_back("E*A is not symmetric (" + fmt(aEA) + ")");
  if (aEB > tol) rep.violations.push_back("E*B is not symmetric (" + fmt(aEB) + ")");
  Eigen::LLT<Mat8> llt(0.5 * (m.E + m.E.transpose()));
  if (llt.info() != Eigen::Success) rep.violations.push_back("E is not positive-definite");

  const Mat8 S = energy_scaling(m.E);
  const Mat8 Sinv = S.inverse();
  double worst_imag = 0.0, worst_resid = 0.0;
  for (int d = 0; d < n_directions; ++d) {
    const double phi = 2.0 * std::numbers::pi * d / n_directions;
    const double nx = std::cos(phi), nz = std::sin(phi);
    const Mat8 J = nx * m.A + nz * m.B;
    Eigen::EigenSolver<Mat8> es(S * J * Sinv, false);
    if (es.info() != Eigen::Success) {
      rep.violations.push_back("eigen-solver failed at angle " + fmt(phi));
      continue;
    }
    const auto ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    const double imag = ev.imag().cwiseAbs().maxCoeff() / scale;
    worst_imag = std::max(worst_imag, imag);
    if (imag > 1e-8) {
      rep.violations.push_back("complex spectrum at angle " + fmt(phi) + " (rel imag " +
                               fmt(imag) + ")");
    }
    // Diagonalizability: E-orthonormal eigenvectors that satisfy J r = lambda r.
    const Mat8 EJ = m.E * J;
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat8> gs(0.5 * (EJ + EJ.transpose()), m.E);
    const Mat8 R = gs.eigenvectors();
    const Mat8 scaled_resid = S * (J * R - R * gs.eigenvalues().asDiagonal());
    const double resid = scaled_resid.cwiseAbs().maxCoeff() / scale;
    worst_resid = std::max(worst_resid, resid);
    Eigen::FullPivLU<Mat8> lu(S * R);
    lu.setThreshold(1e-8);
    if (resid > 1e-8 || lu.rank() < kNumState) {
      rep.violations.push_back("eigenvectors incomplete at angle " + fmt(phi));
    }
  }
  rep.values["directions"] = std::to_string(n_directions);
  rep.values["max_rel_imag"] = fmt(worst_imag);
  rep.values["max_eig_residual"] = fmt(worst_resid);
  return rep;
}

StateVector random_state(const Mat8& E, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  StateVector q;
  for (int k = 0; k < kNumState; ++k) q(k) = nd(rng) / std::sqrt(E(k, k));
  return q;
}

CheckReport check_entropy_conditions(const SystemMatrices& m, int n_samples,
                                     std::uint64_t seed) {
  CheckReport rep;
  rep.name = "entropy";
  rep.values["seed"] = std::to_string(seed);

  double worst = 0.0;
  for (int d = 0; d < 72; ++d) {
    const double phi = 2.0 * std::numbers::pi * d / 72;
    worst = std::max(worst, asymmetry(m.E * (std::cos(phi) * m.A + std::sin(phi) * m.B)));
  }
  rep.values["cond1_max_asym"] = fmt(worst);
  if (worst > 1e-12) rep.violations.push_back("condition 1: E(n.A) not symmetric");

  const Mat8 ED = m.E * m.D;
  const double ed_scale = ED.cwiseAbs().maxCoeff();
  if (ed_scale > 0) {
    const double a = asymmetry(ED);
    if (a > 1e-12) rep.violations.push_back("E*D is not symmetric (" + fmt(a) + ")");
    Eigen::SelfAdjointEigenSolver<Mat8> es(0.5 * (ED + ED.transpose()), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    rep.values["ED_max_eig_rel"] = fmt(top / ed_scale);
    if (top > 1e-12 * ed_scale) rep.violations.push_back("E*D is not negative-semidefinite");
  }

  std::mt19937_64 rng(seed);
  const bool dissipative = ed_scale > 0;
  int bad2 = 0, bad3 = 0;
  for (int s = 0; s < n_samples; ++s) {
    StateVector q = random_state(m.E, rng);
    const double diss = q.dot(ED * q);
    const double bound = q.cwiseAbs().dot(ED.cwiseAbs() * q.cwiseAbs());
    if (diss > 1e-12 * bound) ++bad2;
    const bool dq_nonzero = (m.D * q).cwiseAbs().maxCoeff() > 0;
    if (dissipative && dq_nonzero && !(diss < 0)) ++bad3;
    if (!dissipative && diss != 0.0) ++bad3;

    StateVector q0 = q;
    q0(kQx) = q0(kQz) = 0.0;
    const double diss0 = q0.dot(ED * q0);
    if (diss0 != 0.0 || (m.D * q0).cwiseAbs().maxCoeff() != 0.0) ++bad3;
  }
  rep.values["samples"] = std::to_string(n_samples);
  if (bad2) rep.violations.push_back("condition 2: Q^T E D Q > 0 for " + std::to_string(bad2) +
                                     " samples");
  if (bad3) rep.violations.push_back("condition 3: Q^T E D Q = 0 does not match D Q = 0 for " +
                                     std::to_string(bad3) + " samples");
  Eigen::LLT<Mat8> llt(0.5 * (m.E + m.E.transpose()));
  if (llt.info() != Eigen::Success) rep.violations.push_back("condition 4: E not positive-definite");
  return rep;
}

ReducedSystem reduce_system(const Material& m) {
  const double ratio = m.spec.rho_f / m.coeffs.rho;
  ReducedSystem r;
  r.Pi.setZero();
  r.G.setZero();
  const int keep[6] = {kTauXX, kTauZZ, kTauXZ, kVx, kVz, kP};
  for (int a = 0; a < 6; ++a) {
    r.Pi(a, keep[a]) = 1.0;
    r.G(keep[a], a) = 1.0;
  }
  r.Pi(3, kQx) = ratio;
  r.Pi(4, kQz) = ratio;
  r.A_r = r.Pi * m.matrices.A * r.G;
  r.B_r = r.Pi * m.matrices.B * r.G;
  return r;
}

ReducedSpeeds reduced_speeds(const ReducedSystem& r, double nx, double nz) {
  const Mat6 J = nx * r.A_r + nz * r.B_r;
  // Balance stresses against velocities before the non-symmetric solve.
  Eigen::Matrix<double, 6, 1> d;
  const double sv = std::sqrt(J.block<3, 3>(3, 0).cwiseAbs().maxCoeff() /
                              std::max(J.block<3, 3>(0, 3).cwiseAbs().maxCoeff(), 1e-300));
  d << 1, 1, 1, 1 / sv, 1 / sv, 1;
  const Mat6 Js = d.asDiagonal() * J * d.cwiseInverse().asDiagonal();
  Eigen::EigenSolver<Mat6> es(Js, false);
  if (es.info() != Eigen::Success) throw VerifyError("reduced-system eigen-solve failed");
  const auto ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (ev.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw VerifyError("reduced system has complex wave speeds");
  }
  std::vector<double> pos;
  for (int i = 0; i < 6; ++i) {
    if (ev(i).real() > kZeroSpeedTol * scale) pos.push_back(ev(i).real());
  }
  if (pos.size() != 2) throw VerifyError("reduced system does not have exactly two positive speeds");
  std::sort(pos.begin(), pos.end());
  return ReducedSpeeds{pos[0], pos[1]};
}

SubcharacteristicReport check_subcharacteristic(const Material& m,
                                                const std::vector<double>& angles) {
  SubcharacteristicReport out;
  CheckReport& rep = out.report;
  rep.name = "subcharacteristic";
  if (!m.coeffs.dissipative()) {
    rep.skipped = true;
    rep.notes.push_back("material '" + m.name + "' has eta = 0: no relaxation, check skipped");
    return out;
  }
  const ReducedSystem rs = reduce_system(m);
  double min_pf = 1e300, min_ps = 1e300, min_s = 1e300;
  for (double a : angles) {
    SubcharacteristicRow row;
    row.angle = a;
    row.full = wave_speeds(m.matrices, std::cos(a), std::sin(a));
    row.reduced = reduced_speeds(rs, std::cos(a), std::sin(a));
    row.margin_pf = (row.full.fast_p - row.reduced.lambda2) / row.full.fast_p;
    row.margin_ps = (row.reduced.lambda2 - row.full.slow_p) / row.full.fast_p;
    row.margin_s = (row.full.s - row.reduced.lambda1) / row.full.s;
    const double margin_0 = row.reduced.lambda1 / row.full.s;
    const double lo = std::min({row.margin_pf, row.margin_ps, row.margin_s, margin_0});
    if (lo < -kEqualityTol) {
      rep.violations.push_back("interleaving violated at angle " + fmt(a * 180 / std::numbers::pi) +
                               " deg");
    } else if (lo < kEqualityTol) {
      row.equality = true;
      out.equality_detected = true;
    }
    min_pf = std::min(min_pf, row.margin_pf);
    min_ps = std::min(min_ps, row.margin_ps);
    min_s = std::min(min_s, row.margin_s);
    out.rows.push_back(row);
  }
  out.strict = rep.ok() && !out.equality_detected;
  if (out.equality_detected) {
    rep.notes.push_back("nonstrict case: a reduced speed equals a full-system speed");
  }
  rep.values["min_margin_pf"] = fmt(min_pf);
  rep.values["min_margin_ps"] = fmt(min_ps);
  rep.values["min_margin_s"] = fmt(min_s);
  rep.values["equality"] = out.equality_detected ? "true" : "false";
  return out;
}

}  // namespace poro
