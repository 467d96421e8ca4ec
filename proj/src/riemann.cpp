#include "poro/riemann.hpp"

#include <cmath>
#include <sstream>

namespace poro {

namespace {

// Fluxes along x involve only tau_xx, tau_xz, p, v_x, v_z, q_x, so tau_zz and q_z
// never propagate in x, for every material and orientation (and symmetrically
// for z). These unit vectors span the shared stationary null space.
Eigen::Matrix<double, kNumState, 2> canonical_null_space(Axis direction) {
  Eigen::Matrix<double, kNumState, 2> n = Eigen::Matrix<double, kNumState, 2>::Zero();
  if (direction == Axis::x) {
    n(kTauZZ, 0) = 1.0;
    n(kQz, 1) = 1.0;
  } else {
    n(kTauXX, 0) = 1.0;
    n(kQx, 1) = 1.0;
  }
  return n;
}

}  // namespace

WaveBasis build_wave_basis(const SystemMatrices& m, Axis direction) {
  const Mat8 J = direction == Axis::x ? m.A : m.B;
  const Mat8 EJ = m.E * J;
  const Mat8 sym = 0.5 * (EJ + EJ.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat8> solver(sym, m.E);
  if (solver.info() != Eigen::Success) {
    throw RiemannError("eigen-decomposition of flux Jacobian failed");
  }

  WaveBasis basis;
  basis.direction = direction;
  basis.energy = m.E;
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(7)));
  const double zero_tol = kZeroSpeedTol * scale;
  int n_neg = 0, n_zero = 0, n_pos = 0;
  for (int i = 0; i < kNumState; ++i) {
    if (ev(i) < -zero_tol) {
      ++n_neg;
    } else if (ev(i) > zero_tol) {
      ++n_pos;
    } else {
      ++n_zero;
    }
  }
  if (n_neg != 3 || n_zero != 2 || n_pos != 3 || !(scale > 0)) {
    std::ostringstream os;
    os << "flux Jacobian along " << axis_name(direction) << " has sign split " << n_neg
       << '/' << n_zero << '/' << n_pos << " instead of 3/2/3";
    throw RiemannError(os.str());
  }

  basis.eigvecs = solver.eigenvectors();
  for (int i = 0; i < kNumState; ++i) {
    basis.speeds[i] = (i == 3 || i == 4) ? 0.0 : ev(i);
    // Fix the sign so the largest energy-weighted entry is positive.
    auto col = basis.eigvecs.col(i);
    int arg = 0;
    double best = -1.0;
    for (int k = 0; k < kNumState; ++k) {
      const double w = std::abs(col(k)) * std::sqrt(m.E(k, k));
      if (w > best) {
        best = w;
        arg = k;
      }
    }
    if (col(arg) < 0) col = -col;
  }
  basis.left = basis.eigvecs.transpose() * m.E;
  return basis;
}

InterfaceOperator build_interface_operator(const WaveBasis& left, const WaveBasis& right,
                                           int left_id, int right_id) {
  if (left.direction != right.direction) {
    throw RiemannError("interface bases have different sweep directions");
  }
  InterfaceOperator op;
  op.left_material = left_id;
  op.right_material = right_id;
  op.direction = left.direction;

  op.null_space = canonical_null_space(op.direction);
  for (const WaveBasis* b : {&left, &right}) {
    // Rebuild the Jacobian from the basis: J = R diag(s) R^-1.
    Eigen::Matrix<double, kNumState, 1> s;
    for (int i = 0; i < kNumState; ++i) s(i) = b->speeds[i];
    const Mat8 J = b->eigvecs * s.asDiagonal() * b->left;
    const double jn = J.cwiseAbs().maxCoeff();
    const double res = (J * op.null_space).cwiseAbs().maxCoeff();
    if (res > 1e-10 * jn) {
      throw RiemannError("stationary null space differs between materials");
    }
  }

  for (int k = 0; k < 3; ++k) {
    const int li = WaveBasis::neg_idx[k];
    op.Rtilde.col(k) = left.eigvecs.col(li);
    op.wave_cols[k] = TravelingWave{left.eigvecs.col(li), left.speeds[li], Side::left};
    const int ri = WaveBasis::pos_idx[k];
    op.Rtilde.col(5 + k) = right.eigvecs.col(ri);
    op.wave_cols[3 + k] = TravelingWave{right.eigvecs.col(ri), right.speeds[ri], Side::right};
  }
  for (int k = 0; k < 2; ++k) {
    StateVector n = op.null_space.col(k);
    n /= std::sqrt(n.dot(left.energy * n));
    op.Rtilde.col(3 + k) = n;
  }

  Eigen::FullPivLU<Mat8> lu(op.Rtilde);
  if (!lu.isInvertible()) {
    throw RiemannError("mixed eigenvector matrix is singular for this material pair");
  }
  op.Rtilde_inv = lu.inverse();
  const double err = (op.Rtilde_inv * op.Rtilde - Mat8::Identity()).cwiseAbs().maxCoeff();
  if (!(err < 1e-8)) {
    throw RiemannError("mixed eigenvector matrix is too ill-conditioned to invert");
  }
  op.strength_rows.topRows<3>() = op.Rtilde_inv.topRows<3>();
  op.strength_rows.bottomRows<3>() = op.Rtilde_inv.bottomRows<3>();
  return op;
}

void solve_normal(const StateVector& q_left, const StateVector& q_right,
                  const InterfaceOperator& op, RiemannSolution& out) {
  const StateVector dq = q_right - q_left;
  const Eigen::Matrix<double, kNumWaves, 1> beta = op.strength_rows * dq;
  out.amdq.setZero();
  out.apdq.setZero();
  for (int p = 0; p < kNumWaves; ++p) {
    const TravelingWave& w = op.wave_cols[p];
    out.waves[p] = beta(p) * w.r;
    out.speeds[p] = w.speed;
    if (p < 3) {
      out.amdq += w.speed * out.waves[p];
    } else {
      out.apdq += w.speed * out.waves[p];
    }
  }
}

RiemannSolution solve_normal(const StateVector& q_left, const StateVector& q_right,
                             const InterfaceOperator& op) {
  RiemannSolution sol;
  solve_normal(q_left, q_right, op, sol);
  return sol;
}

TransverseSplit solve_transverse(const StateVector& fluctuation, const WaveBasis& basis) {
  const StateVector gamma = basis.left * fluctuation;
  TransverseSplit out;
  for (int i : WaveBasis::neg_idx) {
    out.bmasdq += (basis.speeds[i] * gamma(i)) * basis.eigvecs.col(i);
  }
  for (int i : WaveBasis::pos_idx) {
    out.bpasdq += (basis.speeds[i] * gamma(i)) * basis.eigvecs.col(i);
  }
  return out;
}

}  // namespace poro
